#include "commands.hpp"

#include <chrono>
#include <optional>

#include <spdlog/spdlog.h>

#include "frames.hpp"
#include "report.hpp"
#include "uwr/fitness.hpp"
#include "uwr/image_io.hpp"
#include "uwr/presearch.hpp"
#include "uwr/quality.hpp"
#include "uwr/restore.hpp"
#include "uwr/uwindex.hpp"

namespace uwr::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<FrameRef> require_frames(const PipelineConfig& cfg, const char* command) {
    if (cfg.io.inputs.empty()) throw UsageError(std::string(command) + ": no inputs given");
    auto frames = gather_frames(cfg.io.inputs, cfg.io.pattern);
    if (frames.empty()) throw UsageError(std::string(command) + ": no image files found in inputs");
    return frames;
}

// Creates the output directory; returns false (after logging) when impossible.
bool prepare_out_dir(const fs::path& dir, const char* command) {
    if (dir.empty()) throw UsageError(std::string(command) + ": --out directory is required");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        spdlog::error("{}: cannot create output directory {}: {}", command, dir.string(),
                      ec ? ec.message() : "not a directory");
        return false;
    }
    return true;
}

Json frame_entry(const FrameRef& f) {
    return Json{{"name", f.name}, {"source", f.path.filename().string()}};
}

void mark_failed(Json& entry, const std::string& what) {
    entry["status"] = "error";
    entry["error"] = what;
}

Json image_metrics(const ImageBuf& img, const GhcWeights& weights) {
    Json j = to_json(underwater_index(img));
    const GhcScore s = ghc(img, weights);
    j["psi"] = s.psi;
    j["mu"] = s.mu;
    j["sigma"] = s.sigma;
    j["xi"] = s.xi;
    j["entropy"] = gray_entropy(img);
    j["laplace"] = mean_abs_laplacian(img);
    return j;
}

// Patch grids are drawn as cells of this many pixels.
constexpr int kHeatCell = 16;

void write_heatmap(const fs::path& path, const PatchGrid& grid) {
    double top = 0.0;
    for (double v : grid.values) top = std::max(top, v);
    ImageBuf img(grid.cols * kHeatCell, grid.rows * kHeatCell, 1);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            img.at(0, x, y) = top > 0.0 ? static_cast<float>(grid.at(x / kHeatCell, y / kHeatCell) / top) : 0.0f;
    save_image(path, img);
}

} // namespace

int cmd_search(const PipelineConfig& cfg, const SearchOptions& opt, std::ostream& table) {
    const auto frames = require_frames(cfg, "search");
    std::vector<std::size_t> order;
    if (opt.ref.empty()) {
        for (std::size_t i = 0; i < frames.size(); ++i) order.push_back(i);
    } else {
        for (std::size_t i = 0; i < frames.size() && order.empty(); ++i)
            if (frames[i].name == opt.ref || frames[i].path.filename() == opt.ref ||
                std::to_string(i) == opt.ref)
                order.push_back(i);
        if (order.empty()) throw UsageError("search: --ref '" + opt.ref + "' matches no input frame");
    }

    int failures = 0;
    std::optional<std::size_t> chosen;
    ImageBuf frame;
    for (std::size_t i : order) {
        try {
            frame = load_image(frames[i].path);
            chosen = i;
            break;
        } catch (const IoError& e) {
            spdlog::error("search: {}", e.what());
            ++failures;
        }
    }
    if (!chosen) {
        spdlog::error("search: no readable reference frame");
        return kExitPartial;
    }

    const FrsObjective objective(frame, cfg.ghc, cfg.swarm.bounds, cfg.fitness.max_side,
                                 cfg.fitness.view);
    const auto t0 = Clock::now();
    const SearchResult r =
        search([&objective](const Position& p) { return objective(p); }, cfg.swarm);
    const double elapsed = ms_since(t0);
    const GhcScore best = objective.evaluate(r.best_params);
    const bool flat = !(r.best_fitness > 0.0);
    if (flat) spdlog::warn("search: fitness is zero everywhere (flat landscape); parameters are arbitrary");

    Json j = report_header("search");
    Json ref = frame_entry(frames[*chosen]);
    ref["width"] = frame.width();
    ref["height"] = frame.height();
    j["reference"] = ref;
    j["fitness"] = {{"view", view_name(cfg.fitness.view)},
                    {"max_side", cfg.fitness.max_side},
                    {"weights", to_json(cfg.ghc)}};
    j["swarm"] = to_json(cfg.swarm);
    j["params"] = to_json(r.best_params);
    j["score"] = to_json(best);
    j["position"] = {{"x", r.best_position.x}, {"y", r.best_position.y}};
    j["trace"] = r.trace;
    j["evaluations"] = r.evaluations;
    j["rejected"] = r.rejected;
    j["flat"] = flat;
    if (!cfg.io.out.empty()) write_json(cfg.io.out, j);

    Table t({"reference", "k", "R", "xi", "psi", "sigma", "mu", "evals"});
    t.add({frames[*chosen].name, fmt_num(r.best_params.k), fmt_num(r.best_params.R),
           fmt_num(best.xi), fmt_num(best.psi), fmt_num(best.sigma), fmt_num(best.mu),
           std::to_string(r.evaluations)});
    t.print(table);
    table << "search time: " << fmt_num(elapsed) << " ms\n";
    return failures ? kExitPartial : kExitOk;
}

int cmd_restore(const PipelineConfig& cfg, std::ostream& table) {
    const auto frames = require_frames(cfg, "restore");
    if (!prepare_out_dir(cfg.io.out, "restore")) return kExitPartial;

    const std::size_t n = frames.size();
    std::vector<std::optional<Restorer>> workers(worker_count(n, cfg.jobs));
    std::vector<Json> entries(n);
    std::vector<double> ms(n, 0.0);
    const auto wall0 = Clock::now();
    parallel_for(n, cfg.jobs, [&](std::size_t i, std::size_t w) {
        Json& e = entries[i] = frame_entry(frames[i]);
        try {
            const ImageBuf img = load_image(frames[i].path);
            e["width"] = img.width();
            e["height"] = img.height();
            if (!workers[w]) workers[w].emplace(cfg.filter, cfg.clahe);
            const auto t0 = Clock::now();
            const ImageBuf out = workers[w]->restore(img);
            ms[i] = ms_since(t0);
            const std::string file = frames[i].name + ".png";
            save_image(cfg.io.out / file, out);
            e["output"] = file;
            e["status"] = "ok";
        } catch (const std::exception& ex) {
            mark_failed(e, ex.what());
            spdlog::error("restore: {}: {}", frames[i].path.string(), ex.what());
        }
    });
    const double wall = ms_since(wall0);

    std::size_t failed = 0;
    double compute = 0.0;
    Json list = Json::array();
    Json timing_frames = Json::array();
    Table t({"frame", "size", "ms", "fps"});
    for (std::size_t i = 0; i < n; ++i) {
        const bool ok = entries[i]["status"] == "ok";
        failed += ok ? 0 : 1;
        list.push_back(entries[i]);
        if (!ok) {
            t.add({frames[i].name, "-", "-", "error"});
            continue;
        }
        compute += ms[i];
        timing_frames.push_back({{"name", frames[i].name}, {"ms", ms[i]}});
        t.add({frames[i].name,
               std::to_string(entries[i]["width"].get<int>()) + "x" +
                   std::to_string(entries[i]["height"].get<int>()),
               fmt_num(ms[i]), fmt_num(ms[i] > 0.0 ? 1000.0 / ms[i] : 0.0)});
    }
    const std::size_t done = n - failed;
    const double fps = compute > 0.0 ? 1000.0 * static_cast<double>(done) / compute : 0.0;
    const double wall_fps = wall > 0.0 ? 1000.0 * static_cast<double>(done) / wall : 0.0;

    Json j = report_header("restore");
    j["params"] = to_json(cfg.filter);
    j["clahe"] = to_json(cfg.clahe);
    j["frames"] = list;
    j["count"] = done;
    j["failed"] = failed;
    Json timing = report_header("restore");
    timing["frames"] = timing_frames;
    timing["compute_ms"] = compute;
    timing["wall_ms"] = wall;
    timing["fps"] = fps;
    timing["wall_fps"] = wall_fps;
    timing["jobs"] = cfg.jobs;
    try {
        write_json(cfg.io.out / "report.json", j);
        write_json(cfg.io.out / "timing.json", timing);
    } catch (const IoError& e) {
        spdlog::error("restore: {}", e.what());
        return kExitPartial;
    }

    t.print(table);
    table << done << " frame(s) restored, " << failed << " failed; compute " << fmt_num(fps)
          << " fps, wall " << fmt_num(wall_fps) << " fps (jobs=" << cfg.jobs << ")\n";
    return failed ? kExitPartial : kExitOk;
}

int cmd_degrade(const PipelineConfig& cfg, std::ostream& table) {
    const auto frames = require_frames(cfg, "degrade");
    if (!prepare_out_dir(cfg.io.out, "degrade")) return kExitPartial;

    const std::size_t n = frames.size();
    std::vector<Json> entries(n);
    parallel_for(n, cfg.jobs, [&](std::size_t i, std::size_t) {
        Json& e = entries[i] = frame_entry(frames[i]);
        try {
            const ImageBuf img = load_image(frames[i].path);
            DegradeParams p = cfg.degrade;
            p.seed = cfg.degrade.seed + i; // one noise stream per frame
            const std::string file = frames[i].name + ".png";
            save_image(cfg.io.out / file, degrade(img, p));
            e["width"] = img.width();
            e["height"] = img.height();
            e["seed"] = p.seed;
            e["output"] = file;
            e["status"] = "ok";
        } catch (const std::exception& ex) {
            mark_failed(e, ex.what());
            spdlog::error("degrade: {}: {}", frames[i].path.string(), ex.what());
        }
    });

    std::size_t failed = 0;
    Json list = Json::array();
    Table t({"frame", "size", "seed", "status"});
    for (std::size_t i = 0; i < n; ++i) {
        const Json& e = entries[i];
        const bool ok = e["status"] == "ok";
        failed += ok ? 0 : 1;
        list.push_back(e);
        t.add({frames[i].name,
               ok ? std::to_string(e["width"].get<int>()) + "x" + std::to_string(e["height"].get<int>()) : "-",
               ok ? std::to_string(e["seed"].get<std::uint64_t>()) : "-", ok ? "ok" : "error"});
    }
    Json j = report_header("degrade");
    j["params"] = to_json(cfg.degrade);
    j["frames"] = list;
    j["count"] = n - failed;
    j["failed"] = failed;
    try {
        write_json(cfg.io.out / "report.json", j);
    } catch (const IoError& e) {
        spdlog::error("degrade: {}", e.what());
        return kExitPartial;
    }
    t.print(table);
    return failed ? kExitPartial : kExitOk;
}

int cmd_evaluate(const PipelineConfig& cfg, const EvaluateOptions& opt, std::ostream& table) {
    const auto frames = require_frames(cfg, "evaluate");
    std::optional<LayerChain> chain;
    if (!opt.patch_chain.empty()) {
        try {
            chain = chains::parse(opt.patch_chain);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("evaluate: ") + e.what());
        }
    }
    if (!opt.heatmap_dir.empty() && !chain) throw UsageError("evaluate: --heatmap needs --patch");
    if (!opt.heatmap_dir.empty() && !prepare_out_dir(opt.heatmap_dir, "evaluate")) return kExitPartial;

    const std::size_t n = frames.size();
    std::vector<std::optional<Restorer>> workers(worker_count(n, cfg.jobs));
    std::vector<Json> entries(n);
    parallel_for(n, cfg.jobs, [&](std::size_t i, std::size_t w) {
        Json& e = entries[i] = frame_entry(frames[i]);
        try {
            const ImageBuf img = load_image(frames[i].path);
            e["width"] = img.width();
            e["height"] = img.height();
            e["metrics"] = image_metrics(img, cfg.ghc);
            if (chain) {
                const PatchGrid grid = patch_underwater_map(img, *chain);
                e["patch"] = {{"chain", opt.patch_chain},
                              {"cols", grid.cols},
                              {"rows", grid.rows},
                              {"U", grid.values}};
                if (!opt.heatmap_dir.empty())
                    write_heatmap(opt.heatmap_dir / (frames[i].name + ".png"), grid);
            }
            if (opt.with_restored) {
                if (!workers[w]) workers[w].emplace(cfg.filter, cfg.clahe);
                e["restored"] = image_metrics(workers[w]->restore(img), cfg.ghc);
            }
            e["status"] = "ok";
        } catch (const std::exception& ex) {
            mark_failed(e, ex.what());
            spdlog::error("evaluate: {}: {}", frames[i].path.string(), ex.what());
        }
    });

    std::size_t failed = 0;
    Json list = Json::array();
    Table t({"frame", "U", "d_o", "d_a", "d_b", "a_l", "xi", "entropy", "laplace"});
    const auto row = [&](const std::string& name, const Json& m) {
        t.add({name, fmt_num(m["U"].get<double>()), fmt_num(m["d_o"].get<double>()),
               fmt_num(m["d_a"].get<double>()), fmt_num(m["d_b"].get<double>()),
               fmt_num(m["a_l"].get<double>()), fmt_num(m["xi"].get<double>()),
               fmt_num(m["entropy"].get<double>()), fmt_num(m["laplace"].get<double>())});
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Json& e = entries[i];
        list.push_back(e);
        if (e["status"] != "ok") {
            ++failed;
            t.add({frames[i].name, "error"});
            continue;
        }
        row(frames[i].name, e["metrics"]);
        if (opt.with_restored) row(frames[i].name + " (FRS)", e["restored"]);
    }
    Json j = report_header("evaluate");
    j["ghc"] = to_json(cfg.ghc);
    if (opt.with_restored) {
        j["params"] = to_json(cfg.filter);
        j["clahe"] = to_json(cfg.clahe);
    }
    j["frames"] = list;
    j["count"] = n - failed;
    j["failed"] = failed;
    if (!cfg.io.out.empty()) write_json(cfg.io.out, j);
    t.print(table);
    return failed ? kExitPartial : kExitOk;
}

int cmd_export_pairs(const PipelineConfig& cfg, const ExportOptions& opt, std::ostream& table) {
    if (opt.size < 8) throw UsageError("export-pairs: --size must be >= 8");
    const auto frames = require_frames(cfg, "export-pairs");
    if (!prepare_out_dir(cfg.io.out / "A", "export-pairs") ||
        !prepare_out_dir(cfg.io.out / "B", "export-pairs"))
        return kExitPartial;

    const std::size_t n = frames.size();
    std::vector<std::optional<Restorer>> workers(worker_count(n, cfg.jobs));
    std::vector<Json> entries(n);
    parallel_for(n, cfg.jobs, [&](std::size_t i, std::size_t w) {
        Json& e = entries[i] = frame_entry(frames[i]);
        try {
            const ImageBuf img = load_image(frames[i].path);
            if (!workers[w]) workers[w].emplace(cfg.filter, cfg.clahe);
            // Restore at native resolution (k is in source pixels), then give
            // both sides the same crop and resize.
            const ImageBuf restored = workers[w]->restore(img);
            const auto fit = [&](const ImageBuf& x) {
                return resize(center_crop_square(x), opt.size, opt.size);
            };
            const std::string file = frames[i].name + ".png";
            save_image(cfg.io.out / "A" / file, fit(img));
            save_image(cfg.io.out / "B" / file, fit(restored));
            e["width"] = img.width();
            e["height"] = img.height();
            e["a"] = "A/" + file;
            e["b"] = "B/" + file;
            e["status"] = "ok";
        } catch (const std::exception& ex) {
            mark_failed(e, ex.what());
            spdlog::error("export-pairs: {}: {}", frames[i].path.string(), ex.what());
        }
    });

    Json pairs = Json::array(), failures = Json::array();
    Table t({"name", "source", "size", "status"});
    for (std::size_t i = 0; i < n; ++i) {
        Json e = entries[i];
        const bool ok = e["status"] == "ok";
        t.add({frames[i].name, e["source"].get<std::string>(),
               ok ? std::to_string(e["width"].get<int>()) + "x" + std::to_string(e["height"].get<int>()) : "-",
               ok ? "ok" : "error"});
        e.erase("status");
        (ok ? pairs : failures).push_back(e);
    }
    Json j = report_header("export-pairs");
    j["params"] = to_json(cfg.filter);
    j["clahe"] = to_json(cfg.clahe);
    j["size"] = opt.size;
    j["count"] = pairs.size();
    j["pairs"] = pairs;
    j["failed"] = failures;
    try {
        write_json(cfg.io.out / "manifest.json", j);
    } catch (const IoError& e) {
        spdlog::error("export-pairs: {}", e.what());
        return kExitPartial;
    }
    t.print(table);
    table << pairs.size() << " pair(s) written to " << cfg.io.out.string() << "\n";
    return failures.empty() ? kExitOk : kExitPartial;
}

int cmd_rf(const PipelineConfig& cfg, const RfOptions& opt, std::ostream& table) {
    LayerChain chain;
    try {
        chain = chains::parse(opt.chain);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("rf: ") + e.what());
    }
    if (opt.input_width < 1 || opt.input_height < 1) throw UsageError("rf: input size must be >= 1");
    const auto sizes = rf_chain(chain);
    const int cols = output_extent(chain, opt.input_width);
    const int rows = output_extent(chain, opt.input_height);
    long stride = 1;
    for (const auto& l : chain) stride *= l.stride;

    Json j = report_header("rf");
    j["chain"] = opt.chain;
    Json layers = Json::array();
    Table t({"layer", "kernel", "stride", "padding", "rf"});
    for (std::size_t i = 0; i < chain.size(); ++i) {
        Json l = to_json(chain[i]);
        l["rf"] = sizes[i];
        layers.push_back(l);
        t.add({std::to_string(i), std::to_string(chain[i].kernel), std::to_string(chain[i].stride),
               std::to_string(chain[i].padding), std::to_string(sizes[i])});
    }
    j["layers"] = layers;
    j["rf"] = sizes.front();
    j["stride"] = stride;
    j["input"] = {{"width", opt.input_width}, {"height", opt.input_height}};
    j["grid"] = {{"cols", cols}, {"rows", rows}};
    if (cols < 1 || rows < 1) spdlog::warn("rf: input too small, the chain yields no output cells");
    if (opt.boxes) {
        Json boxes = Json::array();
        for (int y = 0; y < rows; ++y)
            for (int x = 0; x < cols; ++x) {
                Json b = to_json(rf_box(chain, x, y, opt.input_width, opt.input_height));
                b["x"] = x;
                b["y"] = y;
                b["unclipped"] = to_json(rf_box_unclipped(chain, x, y));
                boxes.push_back(b);
            }
        j["boxes"] = boxes;
    }
    if (!cfg.io.out.empty()) write_json(cfg.io.out, j);
    t.print(table);
    table << "chain " << opt.chain << ": rf " << sizes.front() << ", stride " << stride << ", grid "
          << cols << "x" << rows << " at " << opt.input_width << "x" << opt.input_height << "\n";
    return kExitOk;
}

} // namespace uwr::cli
