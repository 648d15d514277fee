#include "frames.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include <fnmatch.h>
#include <spdlog/spdlog.h>

#include "uwr/image_io.hpp"

namespace uwr::cli {

bool glob_match(const std::string& pattern, const std::string& name) {
    return fnmatch(pattern.c_str(), name.c_str(), 0) == 0;
}

std::vector<FrameRef> gather_frames(const std::vector<std::filesystem::path>& inputs,
                                    const std::string& pattern) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        std::error_code ec;
        if (fs::is_directory(in, ec)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(in, ec)) {
                if (!e.is_regular_file()) continue;
                const auto& p = e.path();
                if (is_image_file(p) && glob_match(pattern, p.filename().string())) found.push_back(p);
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in); // unreadable files fail later, per frame
        }
    }

    std::vector<FrameRef> out;
    std::set<std::string> taken;
    for (const auto& f : files) {
        std::string stem = f.stem().string();
        if (stem.empty()) stem = "frame";
        std::string name = stem;
        for (int n = 1; taken.count(name); ++n) name = stem + "_" + std::to_string(n);
        if (name != stem) spdlog::warn("name collision: {} written as {}", f.string(), name);
        taken.insert(name);
        out.push_back({f, name});
    }
    return out;
}

std::size_t worker_count(std::size_t n, int jobs) noexcept {
    return std::max<std::size_t>(1, std::min(n, static_cast<std::size_t>(std::max(1, jobs))));
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t workers = worker_count(n, jobs);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr error;
    std::size_t error_index = n;
    auto work = [&](std::size_t worker) {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i, worker);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace uwr::cli
