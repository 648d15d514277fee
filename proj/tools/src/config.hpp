#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwr/degrade.hpp"
#include "uwr/enhance.hpp"
#include "uwr/fitness.hpp"
#include "uwr/pgafsa.hpp"
#include "uwr/presearch.hpp"
#include "uwr/restore.hpp"

namespace uwr::cli {

/// Bad flags, config values or params files. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitnessOptions {
    int max_side = 128;
    FitnessView view = FitnessView::crop;
};

struct IoConfig {
    std::vector<std::filesystem::path> inputs;
    std::string pattern = "*";  // applied to directory entries
    std::filesystem::path out;
};

struct PipelineConfig {
    FilterParams filter;
    bool filter_given = false; // set by a config filter section or params flags
    GhcWeights ghc;
    SwarmConfig swarm;
    FitnessOptions fitness;
    ClaheConfig clahe;
    DegradeParams degrade;
    IoConfig io;
    int jobs = 1;

    void validate() const; // throws UsageError
};

/// Reads a YAML document whose sections mirror PipelineConfig. Keys left out
/// keep their current value in cfg; unknown keys are rejected.
void merge_config_file(PipelineConfig& cfg, const std::filesystem::path& path);
void merge_config_text(PipelineConfig& cfg, const std::string& text);

/// Loads k and R from a params JSON: either {"k":..,"R":..} or a search report
/// with a "params" object.
FilterParams load_params(const std::filesystem::path& path);

const char* view_name(FitnessView v) noexcept;
FitnessView parse_view(const std::string& s);

} // namespace uwr::cli
