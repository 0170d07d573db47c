#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsclust/distance.hpp"
#include "tsclust/series.hpp"
#include "tsclust/validity.hpp"

namespace tsclust {

struct PsoConfig {
    std::size_t swarm_size = 30;
    std::size_t max_iters = 500;
    double inertia_start = 1.2;
    double inertia_end = 0.4;  // linear decay endpoint
    double c1 = 1.5;           // cognitive coefficient
    double c2 = 1.5;           // social coefficient
    std::size_t k = 2;
    double w1 = 0.5;  // combined-measure weight on compactness
    double w2 = 0.5;  // combined-measure weight on separation
    std::uint64_t seed = 0;

    void validate() const {
        if (swarm_size < 1) throw std::invalid_argument("swarm_size must be >= 1");
        if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
        if (inertia_end > inertia_start)
            throw std::invalid_argument("inertia_end must not exceed inertia_start");
        if (std::abs(w1 + w2 - 1.0) > 1e-12)
            throw std::invalid_argument("combined-measure weights must sum to 1");
    }
};

// One candidate solution: K continuous medoid coordinates in dataset-index
// space, evolved by the velocity/position updates.
struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
};

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> global_best_position;
    double global_best_fitness = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
    // One generator per particle, derived from the seed, so draws do not
    // depend on evaluation order.
    std::vector<std::mt19937_64> streams;
};

namespace detail {

// 53-bit uniform in [0, 1); the engine is fully specified by the standard,
// so draws are reproducible across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::mt19937_64 particle_stream(std::uint64_t seed, std::size_t particle) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(particle)};
    return std::mt19937_64(seq);
}

}  // namespace detail

// Continuous coordinates -> K distinct dataset ordinals. Each slot is rounded
// to the nearest integer and clamped; a collision advances to the nearest
// unused ordinal, probing +1, -1, +2, -2, ...
inline std::vector<std::size_t> decode_position(std::span<const double> position,
                                                std::size_t dataset_size) {
    const std::size_t k = position.size();
    if (dataset_size < k)
        throw std::invalid_argument("dataset smaller than the number of clusters");
    std::vector<bool> used(dataset_size, false);
    std::vector<std::size_t> out;
    out.reserve(k);
    for (double coord : position) {
        long long r = std::llround(coord);
        r = std::clamp<long long>(r, 0, static_cast<long long>(dataset_size) - 1);
        if (used[static_cast<std::size_t>(r)]) {
            for (long long step = 1;; ++step) {
                const long long up = r + step;
                if (up < static_cast<long long>(dataset_size) && !used[up]) {
                    r = up;
                    break;
                }
                const long long down = r - step;
                if (down >= 0 && !used[down]) {
                    r = down;
                    break;
                }
            }
        }
        used[static_cast<std::size_t>(r)] = true;
        out.push_back(static_cast<std::size_t>(r));
    }
    return out;
}

// Nearest-medoid assignment. Medoid series are pinned to their own clusters;
// distance ties go to the lowest cluster index. Should a cluster still end up
// empty, the series farthest from its assigned medoid is moved into it.
template <typename Dist>
Partition assign(std::size_t series_count, std::span<const std::size_t> medoids, Dist&& dist) {
    Partition p;
    p.k = medoids.size();
    p.medoids.assign(medoids.begin(), medoids.end());
    if (p.k == 0) throw std::invalid_argument("assign needs at least one medoid");
    {
        std::vector<std::size_t> sorted = p.medoids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("medoids must be distinct");
        if (sorted.back() >= series_count)
            throw std::invalid_argument("medoid ordinal out of range");
    }

    std::vector<std::size_t> slot_of(series_count, p.k);
    for (std::size_t c = 0; c < p.k; ++c) slot_of[medoids[c]] = c;

    p.assignment.resize(series_count);
    for (std::size_t i = 0; i < series_count; ++i) {
        if (slot_of[i] < p.k) {
            p.assignment[i] = slot_of[i];
            continue;
        }
        std::size_t best = 0;
        double best_d = dist(i, medoids[0]);
        for (std::size_t c = 1; c < p.k; ++c) {
            const double d = dist(i, medoids[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        p.assignment[i] = best;
    }

    // Empty-cluster repair. Unreachable while medoids are pinned, kept as a
    // safety net for the partition invariants.
    for (;;) {
        std::vector<std::size_t> sizes(p.k, 0);
        for (std::size_t c : p.assignment) ++sizes[c];
        std::size_t empty = p.k;
        for (std::size_t c = 0; c < p.k; ++c)
            if (sizes[c] == 0) {
                empty = c;
                break;
            }
        if (empty == p.k) break;
        std::size_t farthest = series_count;
        double far_d = -1.0;
        for (std::size_t i = 0; i < series_count; ++i) {
            if (slot_of[i] < p.k) continue;
            const double d = dist(i, medoids[p.assignment[i]]);
            if (d > far_d) {
                far_d = d;
                farthest = i;
            }
        }
        if (farthest == series_count)
            throw std::invalid_argument("cannot repair empty cluster: all series are medoids");
        p.assignment[farthest] = empty;
    }
    return p;
}

// Member minimizing the sum of squared distances to the other members; ties
// keep the lowest ordinal.
template <typename Dist>
std::size_t medoid(std::span<const std::size_t> members, Dist&& dist) {
    if (members.empty()) throw std::invalid_argument("medoid of an empty member list");
    std::vector<std::size_t> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t best = sorted[0];
    double best_sse = std::numeric_limits<double>::infinity();
    for (std::size_t m : sorted) {
        double s = 0.0;
        for (std::size_t other : sorted) {
            if (other == m) continue;
            const double d = dist(m, other);
            s += d * d;
        }
        if (s < best_sse) {
            best_sse = s;
            best = m;
        }
    }
    return best;
}

// assign + combined measure: the swarm's objective. Lower is better.
template <typename Dist>
double fitness(std::size_t series_count, std::span<const std::size_t> medoids, Dist&& dist,
               double w1, double w2) {
    const Partition p = assign(series_count, medoids, dist);
    return combined(p, dist, w1, w2);
}

// Memoized symmetric series distances keyed by unordered ordinal pair. The
// swarm revisits the same medoid candidates across iterations, so this is
// where nearly all the running time is saved. Dense storage below a size
// threshold, hashed otherwise. Not safe for concurrent mutation.
class PairwiseCache {
public:
    PairwiseCache(const Dataset& data, DistanceSpec spec)
        : data_(&data), spec_(std::move(spec)), n_(data.size()) {
        spec_.validate();
        if (n_ <= kDenseLimit)
            dense_.assign(n_ * n_, std::numeric_limits<double>::quiet_NaN());
    }

    double operator()(std::size_t i, std::size_t j) {
        if (i == j) return 0.0;
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        if (!dense_.empty()) {
            double& slot = dense_[lo * n_ + hi];
            if (std::isnan(slot))
                slot = series_distance(data_->series[lo], data_->series[hi], spec_);
            return slot;
        }
        const std::uint64_t key = static_cast<std::uint64_t>(lo) * n_ + hi;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double d = series_distance(data_->series[lo], data_->series[hi], spec_);
        memo_.emplace(key, d);
        return d;
    }

    const DistanceSpec& spec() const { return spec_; }

private:
    static constexpr std::size_t kDenseLimit = 2048;

    const Dataset* data_;
    DistanceSpec spec_;
    std::size_t n_;
    std::vector<double> dense_;
    std::unordered_map<std::uint64_t, double> memo_;
};

struct PsoRun {
    Partition partition;
    // (iteration, global best fitness), one entry per iteration plus the
    // initial evaluation.
    std::vector<std::pair<std::size_t, double>> trace;
};

// Medoid clustering by a single synchronous swarm. Deterministic for a fixed
// (data, spec, config): per-particle generator streams plus a global-best
// reduction in particle-index order make results independent of evaluation
// schedule.
class PsoClusterer {
public:
    PsoClusterer(const Dataset& data, DistanceSpec spec, PsoConfig cfg)
        : data_(&data), cfg_(cfg), cache_(data, std::move(spec)) {
        cfg_.validate();
        if (cfg_.k < 2) throw std::invalid_argument("clustering requires K >= 2");
        if (data.size() < cfg_.k)
            throw std::invalid_argument("dataset smaller than the number of clusters");
    }

    double pair_distance(std::size_t i, std::size_t j) { return cache_(i, j); }

    double evaluate(std::span<const double> position) {
        const std::vector<std::size_t> medoids = decode_position(position, data_->size());
        auto dist = [this](std::size_t i, std::size_t j) { return cache_(i, j); };
        return fitness(data_->size(), medoids, dist, cfg_.w1, cfg_.w2);
    }

    SwarmState initialize() {
        const double span = static_cast<double>(data_->size() - 1);
        SwarmState state;
        state.particles.resize(cfg_.swarm_size);
        state.streams.reserve(cfg_.swarm_size);
        for (std::size_t p = 0; p < cfg_.swarm_size; ++p)
            state.streams.push_back(detail::particle_stream(cfg_.seed, p));
        for (std::size_t p = 0; p < cfg_.swarm_size; ++p) {
            Particle& particle = state.particles[p];
            particle.position.resize(cfg_.k);
            particle.velocity.resize(cfg_.k);
            for (double& x : particle.position) x = detail::uniform(state.streams[p], 0.0, span);
            for (double& v : particle.velocity)
                v = detail::uniform(state.streams[p], -span / 10.0, span / 10.0);
            particle.best_position = particle.position;
            particle.best_fitness = evaluate(particle.position);
            if (particle.best_fitness < state.global_best_fitness) {
                state.global_best_fitness = particle.best_fitness;
                state.global_best_position = particle.best_position;
            }
        }
        state.iteration = 0;
        return state;
    }

    // One synchronous swarm iteration: move every particle against the
    // previous global best, evaluate, then fold personal/global bests in
    // particle-index order. Bests are replaced only on strict improvement.
    void step(SwarmState& state) {
        const double t = static_cast<double>(state.iteration);
        const double inertia =
            cfg_.inertia_start -
            (cfg_.inertia_start - cfg_.inertia_end) * t / static_cast<double>(cfg_.max_iters);
        const double vmax = static_cast<double>(data_->size() - 1) / 2.0;

        std::vector<double> fitnesses(state.particles.size());
        for (std::size_t p = 0; p < state.particles.size(); ++p) {
            Particle& particle = state.particles[p];
            const double r1 = detail::uniform01(state.streams[p]);
            const double r2 = detail::uniform01(state.streams[p]);
            for (std::size_t d = 0; d < cfg_.k; ++d) {
                double v = inertia * particle.velocity[d] +
                           cfg_.c1 * r1 * (particle.best_position[d] - particle.position[d]) +
                           cfg_.c2 * r2 * (state.global_best_position[d] - particle.position[d]);
                v = std::clamp(v, -vmax, vmax);
                particle.velocity[d] = v;
                particle.position[d] += v;
            }
            fitnesses[p] = evaluate(particle.position);
        }
        for (std::size_t p = 0; p < state.particles.size(); ++p) {
            Particle& particle = state.particles[p];
            if (fitnesses[p] < particle.best_fitness) {
                particle.best_fitness = fitnesses[p];
                particle.best_position = particle.position;
                if (particle.best_fitness < state.global_best_fitness) {
                    state.global_best_fitness = particle.best_fitness;
                    state.global_best_position = particle.best_position;
                }
            }
        }
        ++state.iteration;
    }

    // Full optimization. The returned partition keeps the global-best
    // assignment but its prototypes are re-derived as true cluster medoids
    // (lowest sum of squared distances to the rest of the cluster).
    PsoRun run() {
        SwarmState state = initialize();
        PsoRun out;
        out.trace.reserve(cfg_.max_iters + 1);
        out.trace.emplace_back(0, state.global_best_fitness);
        for (std::size_t it = 1; it <= cfg_.max_iters; ++it) {
            step(state);
            out.trace.emplace_back(it, state.global_best_fitness);
        }

        auto dist = [this](std::size_t i, std::size_t j) { return cache_(i, j); };
        const std::vector<std::size_t> gb_medoids =
            decode_position(state.global_best_position, data_->size());
        Partition p = assign(data_->size(), gb_medoids, dist);
        const auto members = p.clusters();
        for (std::size_t c = 0; c < p.k; ++c) p.medoids[c] = medoid(members[c], dist);
        p.validate();
        out.partition = std::move(p);
        return out;
    }

    const PsoConfig& config() const { return cfg_; }

private:
    const Dataset* data_;
    PsoConfig cfg_;
    PairwiseCache cache_;
};

}  // namespace tsclust
