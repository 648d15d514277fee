#include "uwr/pgafsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace uwr {

void SearchBounds::validate() const {
    if (!(k_min > 0.0) || !(k_max > k_min) || !std::isfinite(k_max))
        throw std::invalid_argument("SearchBounds: need 0 < k_min < k_max");
    if (!(R_min > 0.0) || !(R_max > R_min) || !std::isfinite(R_max))
        throw std::invalid_argument("SearchBounds: need 0 < R_min < R_max");
}

namespace {

double log_lerp(double lo, double hi, double t) {
    return std::exp(std::log(lo) + std::clamp(t, 0.0, 1.0) * (std::log(hi) - std::log(lo)));
}

double log_unlerp(double lo, double hi, double v) {
    return std::clamp((std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo)), 0.0, 1.0);
}

} // namespace

FilterParams decode(const Position& pos, const SearchBounds& b) {
    return {log_lerp(b.k_min, b.k_max, pos.x), log_lerp(b.R_min, b.R_max, pos.y)};
}

Position encode(const FilterParams& p, const SearchBounds& b) {
    return {log_unlerp(b.k_min, b.k_max, std::max(p.k, b.k_min)),
            log_unlerp(b.R_min, b.R_max, std::max(p.R, b.R_min))};
}

void SwarmConfig::validate() const {
    if (population < 1) throw std::invalid_argument("SwarmConfig: population must be >= 1");
    if (!(step > 0.0) || !(step <= visual) || !(visual <= 1.0))
        throw std::invalid_argument("SwarmConfig: need 0 < step <= visual <= 1");
    if (!(crowding > 0.0) || !(crowding <= 1.0))
        throw std::invalid_argument("SwarmConfig: crowding must lie in (0,1]");
    if (try_number < 1) throw std::invalid_argument("SwarmConfig: try_number must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("SwarmConfig: max_iter must be >= 1");
    bounds.validate();
}

namespace {

constexpr double kRejected = -std::numeric_limits<double>::infinity();

Position clamp_unit(Position p) { return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)}; }

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Per-fish evaluation context with its own RNG stream and counters.
struct Mover {
    const FitnessFn& fitness;
    const SwarmConfig& cfg;
    std::mt19937_64 rng;
    std::size_t evaluations = 0;
    std::size_t rejected = 0;

    double evaluate(const Position& p) {
        ++evaluations;
        const double v = fitness(p);
        if (!std::isfinite(v)) {
            ++rejected;
            spdlog::debug("pgafsa: rejected non-finite fitness at ({}, {})", p.x, p.y);
            return kRejected;
        }
        return v;
    }

    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
    double symmetric() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

    Position probe(const Position& from, double radius) {
        return clamp_unit({from.x + radius * symmetric(), from.y + radius * symmetric()});
    }

    // Random-length step toward target, never overshooting it.
    Fish move_toward(const Position& from, const Position& target) {
        const double d = distance(from, target);
        Position next = target;
        if (d > 0.0) {
            const double len = std::min(d, cfg.step * unit());
            next = clamp_unit({from.x + (target.x - from.x) * len / d,
                               from.y + (target.y - from.y) * len / d});
        }
        return {next, evaluate(next)};
    }
};

std::size_t optimal_index(const std::vector<Fish>& school) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < school.size(); ++i)
        if (school[i].fitness > school[best].fitness) best = i;
    return best;
}

Fish move_optimal(const Fish& self, Mover& m) {
    for (int t = 0; t < m.cfg.try_number; ++t) {
        const Position p = m.probe(self.position, m.cfg.visual);
        const double v = m.evaluate(p);
        if (v > self.fitness) return {p, v};
    }
    return self; // stay
}

Fish move_common(std::size_t i, const std::vector<Fish>& school, Mover& m) {
    const Fish& self = school[i];
    const double visual = m.cfg.visual;

    // Greedy following: the best neighbour, if it beats us.
    std::size_t leader = school.size();
    std::size_t neighbours = 0;
    Position centre{0.0, 0.0};
    for (std::size_t j = 0; j < school.size(); ++j) {
        if (j == i || distance(self.position, school[j].position) >= visual) continue;
        ++neighbours;
        centre.x += school[j].position.x;
        centre.y += school[j].position.y;
        if (leader == school.size() || school[j].fitness > school[leader].fitness) leader = j;
    }
    if (leader != school.size() && school[leader].fitness > self.fitness)
        return m.move_toward(self.position, school[leader].position);

    // Swarming toward an uncrowded, better neighbourhood centre.
    if (neighbours > 0) {
        const double occupancy = static_cast<double>(neighbours) / static_cast<double>(school.size());
        if (occupancy < m.cfg.crowding) {
            centre.x /= static_cast<double>(neighbours);
            centre.y /= static_cast<double>(neighbours);
            if (m.evaluate(centre) > self.fitness) return m.move_toward(self.position, centre);
        }
    }

    // Preying.
    for (int t = 0; t < m.cfg.try_number; ++t) {
        const Position p = m.probe(self.position, visual);
        if (m.evaluate(p) > self.fitness) return m.move_toward(self.position, p);
    }

    // Wandering.
    const Position p = m.probe(self.position, m.cfg.step);
    return {p, m.evaluate(p)};
}

std::mt19937_64 stream(std::uint64_t seed, int iteration, std::size_t fish) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(iteration + 1), static_cast<std::uint32_t>(fish)};
    return std::mt19937_64(seq);
}

} // namespace

SearchResult search(const FitnessFn& fitness, const SwarmConfig& cfg, const SwarmObserver& observer) {
    cfg.validate();
    if (!fitness) throw std::invalid_argument("search: empty fitness function");

    SearchResult result;
    const auto n = static_cast<std::size_t>(cfg.population);
    std::vector<Fish> school(n);
    for (std::size_t i = 0; i < n; ++i) {
        Mover m{fitness, cfg, stream(cfg.seed, -1, i)};
        school[i].position = {m.unit(), m.unit()};
        school[i].fitness = m.evaluate(school[i].position);
        result.evaluations += m.evaluations;
        result.rejected += m.rejected;
    }
    if (observer) observer(-1, school);

    Fish best = school[optimal_index(school)];
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const std::size_t leader = optimal_index(school);
        std::vector<Fish> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            Mover m{fitness, cfg, stream(cfg.seed, iter, i)};
            next[i] = i == leader ? move_optimal(school[i], m) : move_common(i, school, m);
            result.evaluations += m.evaluations;
            result.rejected += m.rejected;
        }
        school = std::move(next);
        const Fish& top = school[optimal_index(school)];
        if (top.fitness > best.fitness) best = top;
        result.trace.push_back(best.fitness);
        if (observer) observer(iter, school);
    }

    if (result.rejected > 0)
        spdlog::warn("pgafsa: {} candidate(s) rejected for non-finite fitness", result.rejected);
    result.best_position = best.position;
    result.best_params = decode(best.position, cfg.bounds);
    result.best_fitness = best.fitness;
    return result;
}

} // namespace uwr
