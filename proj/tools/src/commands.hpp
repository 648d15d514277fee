#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"

namespace uwr::cli {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2 };

struct SearchOptions {
    std::string ref; // frame name, filename or 0-based index; empty = first readable
};

struct EvaluateOptions {
    std::string patch_chain;           // empty = no patch grid
    std::filesystem::path heatmap_dir; // empty = no heatmaps
    bool with_restored = false;        // also score FRS(x) with cfg.filter
};

struct ExportOptions {
    int size = 512;
};

struct RfOptions {
    std::string chain = "stem+ub";
    int input_width = 512;
    int input_height = 512;
    bool boxes = false;
};

// Each command reads cfg.io.inputs / cfg.io.out and prints a table to `table`.
// search, evaluate and rf write their JSON report to cfg.io.out when set;
// restore, degrade and export-pairs treat cfg.io.out as the output directory.
int cmd_search(const PipelineConfig& cfg, const SearchOptions& opt, std::ostream& table);
int cmd_restore(const PipelineConfig& cfg, std::ostream& table);
int cmd_degrade(const PipelineConfig& cfg, std::ostream& table);
int cmd_evaluate(const PipelineConfig& cfg, const EvaluateOptions& opt, std::ostream& table);
int cmd_export_pairs(const PipelineConfig& cfg, const ExportOptions& opt, std::ostream& table);
int cmd_rf(const PipelineConfig& cfg, const RfOptions& opt, std::ostream& table);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out);

} // namespace uwr::cli
