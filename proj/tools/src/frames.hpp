#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace uwr::cli {

struct FrameRef {
    std::filesystem::path path;
    std::string name; // output stem, unique within one run
};

/// Expands inputs in order. Directories contribute their image files whose
/// filename matches pattern (shell glob), sorted by filename. Output stems that
/// collide get _1, _2, ... suffixes, with a warning.
std::vector<FrameRef> gather_frames(const std::vector<std::filesystem::path>& inputs,
                                    const std::string& pattern);

bool glob_match(const std::string& pattern, const std::string& name);

/// Number of worker threads parallel_for will use.
std::size_t worker_count(std::size_t n, int jobs) noexcept;

/// Runs fn(index, worker) for index in [0, n) on up to jobs threads; worker is
/// in [0, worker_count). The exception of the lowest failing index is
/// rethrown once all workers stop.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t index, std::size_t worker)>& fn);

} // namespace uwr::cli
