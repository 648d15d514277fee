#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uwr/restore.hpp"

namespace uwr {

/// Search box for (k, R). Both axes are mapped logarithmically onto [0,1].
struct SearchBounds {
    double k_min = 1e-2;
    double k_max = 10.0;
    double R_min = 1e-5;
    double R_max = 1.0;

    void validate() const;
};

/// Normalized log-space coordinates: x encodes k, y encodes R.
struct Position {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Position&, const Position&) = default;
};

FilterParams decode(const Position& pos, const SearchBounds& b);
Position encode(const FilterParams& p, const SearchBounds& b);

struct SwarmConfig {
    int population = 20;
    double visual = 0.5;
    double step = 0.15;
    double crowding = 0.618;
    int try_number = 5;
    int max_iter = 30;
    std::uint64_t seed = 0;
    SearchBounds bounds;

    void validate() const;
};

struct Fish {
    Position position;
    double fitness = 0.0;
};

struct SearchResult {
    Position best_position;
    FilterParams best_params;
    double best_fitness = 0.0;
    std::vector<double> trace; // best-ever fitness after each iteration
    std::size_t evaluations = 0;
    std::size_t rejected = 0;  // non-finite fitness values
};

using FitnessFn = std::function<double(const Position&)>;
/// Called after initialization (iteration -1) and after every iteration.
using SwarmObserver = std::function<void(int iteration, std::span<const Fish> school)>;

/// Protected and greedy artificial fish school search maximizing fitness over
/// [0,1]^2. Each iteration decides every fish's move from a snapshot of the
/// previous school, so results depend only on cfg.seed.
///
/// Common fish try, in order: follow the best better neighbour within visual
/// range; swarm toward the neighbourhood centre when it is uncrowded and
/// better; prey with up to try_number random probes; wander. The optimal fish
/// only preys, jumping straight to the first improving probe, and otherwise
/// stays put, so the best fitness never decreases.
SearchResult search(const FitnessFn& fitness, const SwarmConfig& cfg,
                    const SwarmObserver& observer = {});

} // namespace uwr
