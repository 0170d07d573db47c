#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsclust/series.hpp"

namespace tsclust {

// Operand of the bilateral slope-based distance: a standardized value plus
// the sines of the adjacent segment angles. A boundary point lacks one side.
struct BsdPoint {
    double value = 0.0;
    std::optional<double> left_sin;
    std::optional<double> right_sin;
};

inline BsdPoint to_bsd_point(const SlopePoint& p) {
    return {p.value, p.left_sin, p.right_sin};
}

// (|x - y|^b)^(1/b), which collapses to |x - y| on scalars for every b >= 1.
inline double minkowski_point(double x, double y, double b = 2.0) {
    if (b < 1.0) throw std::invalid_argument("minkowski order must be >= 1");
    return std::abs(x - y);
}

// Value difference plus the two slope-sine differences. A slope term is
// dropped when either operand lacks that side, so boundary points degrade to
// the simple slope-based form and every computed term stays inside [0, 2] on
// standardized inputs.
inline double bsd_point(const BsdPoint& a, const BsdPoint& c) {
    double d = std::abs(a.value - c.value);
    if (a.right_sin && c.right_sin) d += std::abs(*a.right_sin - *c.right_sin);
    if (a.left_sin && c.left_sin) d += std::abs(*a.left_sin - *c.left_sin);
    return d;
}

struct DtwResult {
    double cost = 0.0;
    // Matched index pairs from (0, 0) to (N-1, M-1); each step advances one
    // of the coordinates or both.
    std::vector<std::pair<std::size_t, std::size_t>> path;

    // cost / (N + M), an optional reporting form; never used by the built-in
    // experiment pipeline.
    double normalized_cost() const {
        if (path.empty()) return 0.0;
        const auto [i, j] = path.back();
        return cost / static_cast<double>(i + j + 2);
    }
};

// Symmetric dynamic time warping. Diagonal steps carry twice the local
// distance (including the start cell), boundary rows and columns accumulate
// with weight 1. The back-trace breaks ties preferring diagonal, then
// vertical (i-1, j), then horizontal steps, which keeps paths deterministic.
template <typename SeqA, typename SeqB, typename Local>
DtwResult dtw(const SeqA& s1, const SeqB& s2, Local&& local) {
    const std::size_t n = std::size(s1);
    const std::size_t m = std::size(s2);
    if (n == 0 || m == 0) throw std::invalid_argument("dtw requires non-empty sequences");

    std::vector<double> cost(n * m);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return cost[i * m + j]; };

    at(0, 0) = 2.0 * local(s1[0], s2[0]);
    for (std::size_t i = 1; i < n; ++i) at(i, 0) = at(i - 1, 0) + local(s1[i], s2[0]);
    for (std::size_t j = 1; j < m; ++j) at(0, j) = at(0, j - 1) + local(s1[0], s2[j]);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < m; ++j) {
            const double d = local(s1[i], s2[j]);
            at(i, j) = std::min({at(i, j - 1) + d, at(i - 1, j - 1) + 2.0 * d,
                                 at(i - 1, j) + d});
        }
    }

    DtwResult out;
    out.cost = at(n - 1, m - 1);
    std::vector<std::pair<std::size_t, std::size_t>> reversed;
    std::size_t i = n - 1;
    std::size_t j = m - 1;
    reversed.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double d = local(s1[i], s2[j]);
            const double diag = at(i - 1, j - 1) + 2.0 * d;
            const double vert = at(i - 1, j) + d;
            const double horz = at(i, j - 1) + d;
            if (diag <= vert && diag <= horz) {
                --i;
                --j;
            } else if (vert <= horz) {
                --i;
            } else {
                --j;
            }
        }
        reversed.emplace_back(i, j);
    }
    out.path.assign(reversed.rbegin(), reversed.rend());
    return out;
}

inline DtwResult dtw_bsd(const SlopeSeries& s1, const SlopeSeries& s2) {
    std::vector<BsdPoint> a;
    std::vector<BsdPoint> b;
    a.reserve(s1.points.size());
    b.reserve(s2.points.size());
    for (const SlopePoint& p : s1.points) a.push_back(to_bsd_point(p));
    for (const SlopePoint& p : s2.points) b.push_back(to_bsd_point(p));
    return dtw(a, b, [](const BsdPoint& x, const BsdPoint& y) { return bsd_point(x, y); });
}

// Edit distance on real sequences: two samples match when within epsilon,
// every insert/delete/substitute costs 1.
inline std::size_t edr(std::span<const double> s1, std::span<const double> s2, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("edr epsilon must be positive");
    const std::size_t n = s1.size();
    const std::size_t m = s2.size();
    std::vector<std::size_t> prev(m + 1);
    std::vector<std::size_t> cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = std::abs(s1[i - 1] - s2[j - 1]) <= epsilon ? 0 : 1;
            cur[j] = std::min({prev[j - 1] + sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

// Longest-common-subsequence similarity under an epsilon match tolerance and
// an optional warping window |i - j| <= delta, reported as the distance
// 1 - LCSS / min(N, M).
inline double lcss_distance(std::span<const double> s1, std::span<const double> s2, double epsilon,
                            std::optional<std::size_t> delta = std::nullopt) {
    if (epsilon <= 0.0) throw std::invalid_argument("lcss epsilon must be positive");
    const std::size_t n = s1.size();
    const std::size_t m = s2.size();
    if (n == 0 || m == 0) return n == m ? 0.0 : 1.0;

    std::vector<std::size_t> prev(m + 1, 0);
    std::vector<std::size_t> cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            const bool in_window = !delta || gap <= *delta;
            if (in_window && std::abs(s1[i - 1] - s2[j - 1]) <= epsilon)
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return 1.0 - static_cast<double>(prev[m]) / static_cast<double>(std::min(n, m));
}

enum class DistanceKind { dtw_bsd, dtw_ed, edr, lcss };

inline std::string to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::dtw_bsd: return "dtw_bsd";
        case DistanceKind::dtw_ed: return "dtw_ed";
        case DistanceKind::edr: return "edr";
        case DistanceKind::lcss: return "lcss";
    }
    throw std::invalid_argument("unknown distance kind");
}

// Accepts both the hyphenated CLI spelling and the underscore form.
inline DistanceKind parse_distance_kind(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "dtw_bsd") return DistanceKind::dtw_bsd;
    if (key == "dtw_ed") return DistanceKind::dtw_ed;
    if (key == "edr") return DistanceKind::edr;
    if (key == "lcss") return DistanceKind::lcss;
    throw std::invalid_argument("unknown distance measure: " + std::string(name));
}

// Selects a sequence-level distance and carries its parameters.
struct DistanceSpec {
    DistanceKind kind = DistanceKind::dtw_bsd;
    double minkowski_b = 2.0;
    double edr_epsilon = 0.2;
    double lcss_epsilon = 0.2;
    std::optional<std::size_t> lcss_delta;  // absent = unconstrained
    bool normalize_dtw = false;

    void validate() const {
        if (minkowski_b < 1.0) throw std::invalid_argument("minkowski_b must be >= 1");
        if (edr_epsilon <= 0.0) throw std::invalid_argument("edr_epsilon must be positive");
        if (lcss_epsilon <= 0.0) throw std::invalid_argument("lcss_epsilon must be positive");
    }
};

inline std::vector<double> values_of(const SlopeSeries& s) {
    std::vector<double> v;
    v.reserve(s.points.size());
    for (const SlopePoint& p : s.points) v.push_back(p.value);
    return v;
}

// Sequence distance under the selected measure. EDR and LCSS see the reduced
// value sequence only; the slope annotations are specific to BSD.
inline double series_distance(const SlopeSeries& a, const SlopeSeries& b,
                              const DistanceSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case DistanceKind::dtw_bsd: {
            const DtwResult r = dtw_bsd(a, b);
            return spec.normalize_dtw ? r.normalized_cost() : r.cost;
        }
        case DistanceKind::dtw_ed: {
            const std::vector<double> va = values_of(a);
            const std::vector<double> vb = values_of(b);
            const DtwResult r = dtw(
                va, vb, [&](double x, double y) { return minkowski_point(x, y, spec.minkowski_b); });
            return spec.normalize_dtw ? r.normalized_cost() : r.cost;
        }
        case DistanceKind::edr: {
            const std::vector<double> va = values_of(a);
            const std::vector<double> vb = values_of(b);
            return static_cast<double>(edr(va, vb, spec.edr_epsilon));
        }
        case DistanceKind::lcss: {
            const std::vector<double> va = values_of(a);
            const std::vector<double> vb = values_of(b);
            return lcss_distance(va, vb, spec.lcss_epsilon, spec.lcss_delta);
        }
    }
    throw std::invalid_argument("unknown distance kind");
}

}  // namespace tsclust
