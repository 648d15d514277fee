#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "uwr/image_io.hpp"

#ifndef UWR_VERSION
#define UWR_VERSION "0.0.0"
#endif

namespace uwr::cli {

namespace {

struct Flags {
    std::string config;
    std::string params;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string out;
    std::vector<std::string> inputs;
    std::string pattern;

    std::optional<double> k, R;
    bool no_clahe = false;
    std::optional<double> clip_limit;
    std::optional<int> tiles;

    std::optional<int> population, iterations, fitness_side;
    std::string fitness_view;

    std::vector<double> attenuation;
    std::optional<double> noise;
};

void add_io(CLI::App* sub, Flags& f, bool out_is_dir) {
    sub->add_option("--config", f.config, "YAML config file (flags override it)")
        ->check(CLI::ExistingFile);
    sub->add_option("--jobs,-j", f.jobs, "worker threads (frame-level)")->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", f.out,
                    out_is_dir ? "output directory" : "JSON report path (optional)");
    sub->add_option("--pattern", f.pattern, "glob for files inside input directories");
    sub->add_option("inputs", f.inputs, "image files or directories");
}

void add_filter(CLI::App* sub, Flags& f) {
    sub->add_option("--params", f.params, "params JSON (a search report or {\"k\":..,\"R\":..})")
        ->check(CLI::ExistingFile);
    sub->add_option("--k", f.k, "turbulence intensity");
    sub->add_option("--R", f.R, "Wiener noise-to-signal ratio");
    sub->add_flag("--no-clahe", f.no_clahe, "skip the CLAHE stage");
    sub->add_option("--clip-limit", f.clip_limit, "CLAHE clip limit");
    sub->add_option("--tiles", f.tiles, "CLAHE tiles per axis");
}

PipelineConfig build_config(const Flags& f, bool search_seed) {
    PipelineConfig cfg;
    if (!f.config.empty()) merge_config_file(cfg, f.config);
    if (!f.params.empty()) {
        cfg.filter = load_params(f.params);
        cfg.filter_given = true;
    }
    if (f.k) cfg.filter.k = *f.k;
    if (f.R) cfg.filter.R = *f.R;
    if (f.k || f.R) cfg.filter_given = true;
    if (f.no_clahe) cfg.clahe.enabled = false;
    if (f.clip_limit) cfg.clahe.clip_limit = *f.clip_limit;
    if (f.tiles) cfg.clahe.tiles_x = cfg.clahe.tiles_y = *f.tiles;
    if (f.seed) (search_seed ? cfg.swarm.seed : cfg.degrade.seed) = *f.seed;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (!f.out.empty()) cfg.io.out = f.out;
    if (!f.pattern.empty()) cfg.io.pattern = f.pattern;
    if (!f.inputs.empty()) cfg.io.inputs.assign(f.inputs.begin(), f.inputs.end());
    if (f.population) cfg.swarm.population = *f.population;
    if (f.iterations) cfg.swarm.max_iter = *f.iterations;
    if (f.fitness_side) cfg.fitness.max_side = *f.fitness_side;
    if (!f.fitness_view.empty()) cfg.fitness.view = parse_view(f.fitness_view);
    if (!f.attenuation.empty()) {
        if (f.attenuation.size() != 3) throw UsageError("--attenuation needs 3 values");
        std::copy(f.attenuation.begin(), f.attenuation.end(), cfg.degrade.attenuation.begin());
    }
    if (f.noise) cfg.degrade.noise_sigma = *f.noise;
    cfg.validate();
    return cfg;
}

void require_filter(const PipelineConfig& cfg, const char* command) {
    if (!cfg.filter_given)
        throw UsageError(std::string(command) +
                         ": restoration params required (--params, --k/--R, or a config filter section)");
}

void setup_logging(const std::string& level) {
    if (!spdlog::get("uwr")) spdlog::set_default_logger(spdlog::stderr_color_mt("uwr"));
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::from_str(level));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Underwater image restoration: parameter search, restoration, metrics.", "uwr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", UWR_VERSION);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

    Flags f;
    SearchOptions search_opt;
    EvaluateOptions eval_opt;
    std::string heatmap;
    ExportOptions export_opt;
    RfOptions rf_opt;
    std::optional<int> rf_height;

    auto* search = app.add_subcommand("search", "find (k, R) maximizing the GHC fitness on a reference frame");
    add_io(search, f, false);
    search->add_option("--seed", f.seed, "swarm RNG seed");
    search->add_option("--ref", search_opt.ref, "reference frame: name, filename or index");
    search->add_option("--population", f.population, "fish count");
    search->add_option("--iterations", f.iterations, "swarm iterations");
    search->add_option("--fitness-side", f.fitness_side, "fitness window side in pixels");
    search->add_option("--fitness-view", f.fitness_view, "crop or downscale")
        ->check(CLI::IsMember({"crop", "downscale"}));

    auto* restore = app.add_subcommand("restore", "Wiener + FCC + CLAHE restoration of frames");
    add_io(restore, f, true);
    add_filter(restore, f);

    auto* degrade = app.add_subcommand("degrade", "apply the forward degradation model");
    add_io(degrade, f, true);
    degrade->add_option("--seed", f.seed, "noise seed (frame i uses seed + i)");
    degrade->add_option("--k", f.k, "turbulence intensity");
    degrade->add_option("--attenuation", f.attenuation, "per-channel attenuation r g b")->expected(3);
    degrade->add_option("--noise", f.noise, "Gaussian noise sigma");

    auto* evaluate = app.add_subcommand("evaluate", "no-reference metrics per frame");
    add_io(evaluate, f, false);
    add_filter(evaluate, f);
    evaluate->add_flag("--restored", eval_opt.with_restored, "also score the restored frame");
    evaluate->add_option("--patch", eval_opt.patch_chain, "patch index grid for a chain (e.g. stem+ub)");
    evaluate->add_option("--heatmap", heatmap, "directory for patch index heatmaps");

    auto* pairs = app.add_subcommand("export-pairs", "write aligned A (original) / B (restored) pairs");
    add_io(pairs, f, true);
    add_filter(pairs, f);
    pairs->add_option("--size", export_opt.size, "output side length");

    auto* rf = app.add_subcommand("rf", "receptive-field geometry of a conv chain");
    rf->add_option("--config", f.config, "YAML config file")->check(CLI::ExistingFile);
    rf->add_option("--out,-o", f.out, "JSON report path (optional)");
    rf->add_option("--chain", rf_opt.chain, "ab, ub, stem+ab, stem+ub or k:s:p,...");
    rf->add_option("--input", rf_opt.input_width, "input width (and height unless --input-height)");
    rf->add_option("--input-height", rf_height, "input height");
    rf->add_flag("--boxes", rf_opt.boxes, "list the input box of every output cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, std::cerr);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, std::cerr);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, std::cerr);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, std::cerr);
        return kExitUsage;
    }
    setup_logging(log_level);

    try {
        if (search->parsed()) return cmd_search(build_config(f, true), search_opt, out);
        if (restore->parsed()) {
            const auto cfg = build_config(f, false);
            require_filter(cfg, "restore");
            return cmd_restore(cfg, out);
        }
        if (degrade->parsed()) return cmd_degrade(build_config(f, false), out);
        if (evaluate->parsed()) {
            const auto cfg = build_config(f, false);
            if (eval_opt.with_restored) require_filter(cfg, "evaluate --restored");
            eval_opt.heatmap_dir = heatmap;
            return cmd_evaluate(cfg, eval_opt, out);
        }
        if (pairs->parsed()) {
            const auto cfg = build_config(f, false);
            require_filter(cfg, "export-pairs");
            return cmd_export_pairs(cfg, export_opt, out);
        }
        if (rf->parsed()) {
            rf_opt.input_height = rf_height.value_or(rf_opt.input_width);
            return cmd_rf(build_config(f, false), rf_opt, out);
        }
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitPartial;
    }
    return kExitUsage;
}

} // namespace uwr::cli
