#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsclust/common.hpp"
#include "tsclust/distance.hpp"
#include "tsclust/series.hpp"

namespace tsclust {

// A clustering solution: per-series cluster ids in [0, k) plus the dataset
// ordinal of each cluster's prototype.
struct Partition {
    std::vector<std::size_t> assignment;
    std::vector<std::size_t> medoids;
    std::size_t k = 0;

    void validate() const {
        if (k == 0 || medoids.size() != k)
            throw std::invalid_argument("partition needs one medoid per cluster");
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t c : assignment) {
            if (c >= k) throw std::invalid_argument("cluster id out of range");
            ++sizes[c];
        }
        for (std::size_t c = 0; c < k; ++c)
            if (sizes[c] == 0)
                throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
        std::vector<std::size_t> sorted = medoids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("medoids must be distinct");
        for (std::size_t c = 0; c < k; ++c) {
            if (medoids[c] >= assignment.size())
                throw std::invalid_argument("medoid ordinal out of range");
            if (assignment[medoids[c]] != c)
                throw std::invalid_argument("a medoid must belong to its own cluster");
        }
    }

    std::vector<std::vector<std::size_t>> clusters() const {
        std::vector<std::vector<std::size_t>> members(k);
        for (std::size_t i = 0; i < assignment.size(); ++i) members[assignment[i]].push_back(i);
        return members;
    }
};

// Agreement counts over all unordered series pairs:
//   a  same class, same cluster      b  same class, different cluster
//   c  different class, same cluster d  different class, different cluster
struct PairCounts {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t total() const { return a + b + c + d; }
};

inline PairCounts pair_counts(std::span<const int> truth, const Partition& predicted) {
    if (truth.size() != predicted.assignment.size())
        throw std::invalid_argument("truth labels and assignment differ in length");

    // Exact integer counting through the class-by-cluster contingency table.
    std::map<int, std::uint64_t> class_sizes;
    std::vector<std::uint64_t> cluster_sizes(predicted.k, 0);
    std::map<std::pair<int, std::size_t>, std::uint64_t> cells;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++class_sizes[truth[i]];
        ++cluster_sizes[predicted.assignment[i]];
        ++cells[{truth[i], predicted.assignment[i]}];
    }
    auto choose2 = [](std::uint64_t n) { return n * (n - 1) / 2; };

    PairCounts pc;
    std::uint64_t same_class = 0;
    std::uint64_t same_cluster = 0;
    for (const auto& [cls, n] : class_sizes) same_class += choose2(n);
    for (std::uint64_t n : cluster_sizes) same_cluster += choose2(n);
    for (const auto& [cell, n] : cells) pc.a += choose2(n);
    pc.b = same_class - pc.a;
    pc.c = same_cluster - pc.a;
    pc.d = choose2(truth.size()) - pc.a - pc.b - pc.c;
    return pc;
}

inline double rand_index(const PairCounts& pc) {
    if (pc.total() == 0)
        throw std::invalid_argument("rand index undefined for fewer than 2 items");
    return static_cast<double>(pc.a + pc.d) / static_cast<double>(pc.total());
}

// a / (a + b + c). When a+b+c = 0 both partitions are all singletons and the
// score is 1 by convention; that case is reported through the warning sink.
inline double jaccard(const PairCounts& pc) {
    const std::uint64_t denom = pc.a + pc.b + pc.c;
    if (denom == 0) {
        warn("jaccard: a+b+c = 0 (all-singleton partitions), returning 1");
        return 1.0;
    }
    return static_cast<double>(pc.a) / static_cast<double>(denom);
}

inline double folkes_mallow(const PairCounts& pc) {
    if (pc.a + pc.b == 0)
        throw std::invalid_argument("folkes-mallow undefined: a + b = 0");
    if (pc.a + pc.c == 0)
        throw std::invalid_argument("folkes-mallow undefined: a + c = 0");
    const double precision = static_cast<double>(pc.a) / static_cast<double>(pc.a + pc.b);
    const double recall = static_cast<double>(pc.a) / static_cast<double>(pc.a + pc.c);
    return std::sqrt(precision * recall);
}

// Each cluster is credited with its most abundant true class.
inline double purity(std::span<const int> truth, const Partition& predicted) {
    if (truth.size() != predicted.assignment.size())
        throw std::invalid_argument("truth labels and assignment differ in length");
    if (truth.empty()) throw std::invalid_argument("purity of an empty labeling");
    std::vector<std::map<int, std::size_t>> counts(predicted.k);
    for (std::size_t i = 0; i < truth.size(); ++i) ++counts[predicted.assignment[i]][truth[i]];
    std::size_t correct = 0;
    for (const auto& cluster : counts) {
        std::size_t best = 0;
        for (const auto& [cls, n] : cluster) best = std::max(best, n);
        correct += best;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

// Mean over classes of the best dice-style overlap 2|G i ^ C j| / (|G|+|C|).
// Assumes as many clusters as classes; computed anyway with a warning when
// the counts differ.
inline double csm(std::span<const int> truth, const Partition& predicted) {
    if (truth.size() != predicted.assignment.size())
        throw std::invalid_argument("truth labels and assignment differ in length");
    std::map<int, std::uint64_t> class_sizes;
    std::map<std::pair<int, std::size_t>, std::uint64_t> cells;
    std::vector<std::uint64_t> cluster_sizes(predicted.k, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++class_sizes[truth[i]];
        ++cluster_sizes[predicted.assignment[i]];
        ++cells[{truth[i], predicted.assignment[i]}];
    }
    if (class_sizes.size() != predicted.k)
        warn("csm: " + std::to_string(class_sizes.size()) + " classes vs " +
             std::to_string(predicted.k) + " clusters");
    double sum = 0.0;
    for (const auto& [cls, class_n] : class_sizes) {
        double best = 0.0;
        for (std::size_t c = 0; c < predicted.k; ++c) {
            auto it = cells.find({cls, c});
            const std::uint64_t overlap = it == cells.end() ? 0 : it->second;
            const double sim = 2.0 * static_cast<double>(overlap) /
                               static_cast<double>(class_n + cluster_sizes[c]);
            best = std::max(best, sim);
        }
        sum += best;
    }
    return sum / static_cast<double>(class_sizes.size());
}

// Mean over clusters of the mean member-to-medoid distance.
template <typename Dist>
double compactness(const Partition& p, Dist&& dist) {
    p.validate();
    const auto members = p.clusters();
    double sum = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        double cluster_sum = 0.0;
        for (std::size_t i : members[c]) cluster_sum += dist(p.medoids[c], i);
        sum += cluster_sum / static_cast<double>(members[c].size());
    }
    return sum / static_cast<double>(p.k);
}

// Sum of pairwise medoid distances divided by K(K-1). The double sum visits
// each unordered pair once, so this is half the pairwise average; kept in
// that printed form deliberately.
template <typename Dist>
double separation(const Partition& p, Dist&& dist) {
    if (p.k < 2) throw std::invalid_argument("separation undefined for K < 2");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = i + 1; j < p.k; ++j) sum += dist(p.medoids[i], p.medoids[j]);
    return sum / static_cast<double>(p.k * (p.k - 1));
}

// w1 * compactness - w2 * separation; lower is better.
template <typename Dist>
double combined(const Partition& p, Dist&& dist, double w1, double w2) {
    if (std::abs(w1 + w2 - 1.0) > 1e-12)
        throw std::invalid_argument("combined-measure weights must sum to 1");
    return w1 * compactness(p, dist) - w2 * separation(p, dist);
}

// Sum over all series of the squared distance to the nearest medoid,
// irrespective of the assigned cluster.
template <typename Dist>
double sse(const Partition& p, Dist&& dist) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        double nearest = dist(i, p.medoids[0]);
        for (std::size_t c = 1; c < p.k; ++c) nearest = std::min(nearest, dist(i, p.medoids[c]));
        sum += nearest * nearest;
    }
    return sum;
}

// Unsquared companion of sse, for comparisons.
template <typename Dist>
double sum_nearest_distance(const Partition& p, Dist&& dist) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        double nearest = dist(i, p.medoids[0]);
        for (std::size_t c = 1; c < p.k; ++c) nearest = std::min(nearest, dist(i, p.medoids[c]));
        sum += nearest;
    }
    return sum;
}

// Pairwise series distance under a spec, by dataset ordinal. Uncached
// convenience form; the clustering engine memoizes instead.
inline auto make_pair_distance(const Dataset& data, DistanceSpec spec) {
    spec.validate();
    return [&data, spec](std::size_t i, std::size_t j) {
        if (i == j) return 0.0;
        return series_distance(data.series[i], data.series[j], spec);
    };
}

inline double compactness(const Dataset& data, const Partition& p, const DistanceSpec& spec) {
    return compactness(p, make_pair_distance(data, spec));
}

inline double separation(const Dataset& data, const Partition& p, const DistanceSpec& spec) {
    return separation(p, make_pair_distance(data, spec));
}

inline double combined(const Dataset& data, const Partition& p, const DistanceSpec& spec,
                       double w1, double w2) {
    return combined(p, make_pair_distance(data, spec), w1, w2);
}

inline double sse(const Dataset& data, const Partition& p, const DistanceSpec& spec) {
    return sse(p, make_pair_distance(data, spec));
}

}  // namespace tsclust
