#include "config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

namespace uwr::cli {

namespace {

// Wraps a YAML map and remembers which keys were consumed, so typos surface
// as errors instead of silently keeping defaults.
class Section {
public:
    // A missing or null node behaves as an empty section.
    Section(const YAML::Node& node, std::string name)
        : node_(node), present_(node && !node.IsNull()), name_(std::move(name)) {
        if (present_ && !node_.IsMap()) throw UsageError("config: '" + name_ + "' must be a mapping");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!present_ || !node_[key]) return;
        try {
            out = node_[key].as<T>();
        } catch (const YAML::Exception&) {
            throw UsageError("config: bad value for " + name_ + "." + key);
        }
    }

    YAML::Node child(const char* key) {
        seen_.insert(key);
        return present_ ? node_[key] : YAML::Node();
    }

    void finish() const {
        if (!present_) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key))
                throw UsageError("config: unknown key " + (name_.empty() ? key : name_ + "." + key));
        }
    }

private:
    YAML::Node node_;
    bool present_;
    std::string name_;
    std::set<std::string> seen_;
};

void merge(PipelineConfig& cfg, const YAML::Node& root) {
    if (!root || root.IsNull()) return;
    Section top(root, "");

    if (root.IsMap() && root["filter"]) cfg.filter_given = true;
    Section filter(top.child("filter"), "filter");
    filter.get("k", cfg.filter.k);
    filter.get("R", cfg.filter.R);
    filter.finish();

    Section ghc(top.child("ghc"), "ghc");
    ghc.get("w_psi", cfg.ghc.w_psi);
    ghc.get("w_sigma", cfg.ghc.w_sigma);
    ghc.get("w_mu", cfg.ghc.w_mu);
    ghc.finish();

    Section swarm(top.child("swarm"), "swarm");
    swarm.get("population", cfg.swarm.population);
    swarm.get("visual", cfg.swarm.visual);
    swarm.get("step", cfg.swarm.step);
    swarm.get("crowding", cfg.swarm.crowding);
    swarm.get("try_number", cfg.swarm.try_number);
    swarm.get("max_iter", cfg.swarm.max_iter);
    swarm.get("seed", cfg.swarm.seed);
    Section bounds(swarm.child("bounds"), "swarm.bounds");
    bounds.get("k_min", cfg.swarm.bounds.k_min);
    bounds.get("k_max", cfg.swarm.bounds.k_max);
    bounds.get("R_min", cfg.swarm.bounds.R_min);
    bounds.get("R_max", cfg.swarm.bounds.R_max);
    bounds.finish();
    swarm.finish();

    Section fitness(top.child("fitness"), "fitness");
    fitness.get("max_side", cfg.fitness.max_side);
    std::string view = view_name(cfg.fitness.view);
    fitness.get("view", view);
    cfg.fitness.view = parse_view(view);
    fitness.finish();

    Section clahe(top.child("clahe"), "clahe");
    clahe.get("enabled", cfg.clahe.enabled);
    clahe.get("tiles_x", cfg.clahe.tiles_x);
    clahe.get("tiles_y", cfg.clahe.tiles_y);
    clahe.get("clip_limit", cfg.clahe.clip_limit);
    clahe.finish();

    Section degrade(top.child("degrade"), "degrade");
    degrade.get("k", cfg.degrade.k);
    std::vector<double> att(cfg.degrade.attenuation.begin(), cfg.degrade.attenuation.end());
    degrade.get("attenuation", att);
    if (att.size() != 3) throw UsageError("config: degrade.attenuation needs 3 values");
    std::copy(att.begin(), att.end(), cfg.degrade.attenuation.begin());
    degrade.get("noise_sigma", cfg.degrade.noise_sigma);
    degrade.get("seed", cfg.degrade.seed);
    degrade.finish();

    Section io(top.child("io"), "io");
    std::vector<std::string> inputs;
    io.get("inputs", inputs);
    for (const auto& s : inputs) cfg.io.inputs.emplace_back(s);
    io.get("pattern", cfg.io.pattern);
    std::string out;
    io.get("out", out);
    if (!out.empty()) cfg.io.out = out;
    io.finish();

    top.get("jobs", cfg.jobs);
    top.finish();
}

} // namespace

const char* view_name(FitnessView v) noexcept { return v == FitnessView::crop ? "crop" : "downscale"; }

FitnessView parse_view(const std::string& s) {
    if (s == "crop") return FitnessView::crop;
    if (s == "downscale") return FitnessView::downscale;
    throw UsageError("fitness view must be 'crop' or 'downscale', got '" + s + "'");
}

void merge_config_text(PipelineConfig& cfg, const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    merge(cfg, root);
}

void merge_config_file(PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    merge_config_text(cfg, text);
    // Relative input paths in the file are taken relative to the file itself.
    const auto base = path.parent_path();
    for (auto& p : cfg.io.inputs)
        if (p.is_relative() && !base.empty()) p = base / p;
}

void PipelineConfig::validate() const {
    try {
        filter.validate();
        ghc.validate();
        swarm.validate();
        clahe.validate();
        degrade.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (fitness.max_side < 3) throw UsageError("fitness.max_side must be >= 3");
    if (jobs < 1) throw UsageError("jobs must be >= 1");
    for (const auto& p : io.inputs)
        if (!std::filesystem::exists(p)) throw UsageError("input not found: " + p.string());
}

FilterParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("params: cannot read " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        const auto& node = j.contains("params") ? j.at("params") : j;
        FilterParams p{node.at("k").get<double>(), node.at("R").get<double>()};
        p.validate();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("params: " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError("params: " + path.string() + ": " + e.what());
    }
}

} // namespace uwr::cli
