#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsclust/common.hpp"

namespace tsclust {

// A raw univariate series: sampled values at implicit time steps 0..N-1.
struct RawSeries {
    std::vector<double> values;
    std::optional<int> label;  // ground-truth class id, when known
    std::size_t id = 0;        // dataset-local ordinal
};

// One retained sample of a reduced series: original time step plus value.
struct ReducedPoint {
    int time_index = 0;
    double value = 0.0;
};

// A retained point annotated with the sines of its adjacent segment angles.
// left_sin is absent on the first point of a series, right_sin on the last.
struct SlopePoint {
    double value = 0.0;
    int time_index = 0;
    std::optional<double> left_sin;
    std::optional<double> right_sin;
};

struct SlopeSeries {
    std::vector<SlopePoint> points;
    std::size_t source_id = 0;

    std::size_t size() const { return points.size(); }
};

struct Dataset {
    std::vector<SlopeSeries> series;
    std::vector<std::optional<int>> labels;  // parallel to series when non-empty
    std::string name;
    std::optional<std::size_t> k_hint;

    std::size_t size() const { return series.size(); }
};

inline void check_raw(const RawSeries& series) {
    if (series.values.size() < 2)
        throw std::invalid_argument("series " + std::to_string(series.id) +
                                    " must have at least 2 values");
    for (double v : series.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("series " + std::to_string(series.id) +
                                        " contains a non-finite value");
}

// Affine map onto [-1, 1]. A constant series maps to all zeros (the midpoint
// of the target range); that case is reported through the warning sink
// rather than treated as a failure.
inline RawSeries standardize(const RawSeries& series) {
    check_raw(series);
    auto [lo_it, hi_it] = std::minmax_element(series.values.begin(), series.values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    RawSeries out = series;
    if (lo == hi) {
        warn("standardize: constant series " + std::to_string(series.id) +
             " mapped to all zeros");
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    for (double& v : out.values) v = 2.0 * (v - lo) / (hi - lo) - 1.0;
    return out;
}

// Shape-preserving point selection. Both endpoints are always retained and
// interior candidates are the strict local extrema. When the candidates do
// not all fit, points are added greedily by largest vertical deviation from
// the line joining their nearest already-retained neighbours. A budget that
// covers the whole series keeps every point.
inline std::vector<ReducedPoint> segment_extrema(const RawSeries& series, std::size_t budget) {
    if (budget < 2) throw std::invalid_argument("segment budget must be at least 2");
    check_raw(series);
    const std::vector<double>& v = series.values;
    const std::size_t n = v.size();

    auto make_points = [&](const std::vector<std::size_t>& idx) {
        std::vector<ReducedPoint> out;
        out.reserve(idx.size());
        for (std::size_t i : idx) out.push_back({static_cast<int>(i), v[i]});
        return out;
    };

    if (budget >= n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return make_points(all);
    }

    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const bool peak = v[i] > v[i - 1] && v[i] > v[i + 1];
        const bool trough = v[i] < v[i - 1] && v[i] < v[i + 1];
        if (peak || trough) candidates.push_back(i);
    }

    const std::size_t target = std::min(budget, candidates.size() + 2);
    std::vector<std::size_t> retained = {0, n - 1};
    std::vector<bool> taken(n, false);
    taken[0] = taken[n - 1] = true;

    while (retained.size() < target) {
        std::size_t best = n;
        double best_dev = -1.0;
        for (std::size_t c : candidates) {
            if (taken[c]) continue;
            auto right = std::upper_bound(retained.begin(), retained.end(), c);
            const std::size_t r = *right;
            const std::size_t l = *std::prev(right);
            const double t = static_cast<double>(c - l) / static_cast<double>(r - l);
            const double interp = v[l] + t * (v[r] - v[l]);
            const double dev = std::abs(v[c] - interp);
            if (dev > best_dev) {
                best_dev = dev;
                best = c;
            }
        }
        retained.insert(std::upper_bound(retained.begin(), retained.end(), best), best);
        taken[best] = true;
    }
    return make_points(retained);
}

// Segment angles from original time steps: theta = atan(dv/dt), always inside
// (-pi/2, pi/2). The sine of each segment's angle is stored on both of its
// endpoints: right_sin of the left point, left_sin of the right point.
inline SlopeSeries annotate_slopes(std::span<const ReducedPoint> reduced,
                                   std::size_t source_id = 0) {
    if (reduced.size() < 2)
        throw std::invalid_argument("annotate_slopes needs at least 2 points");
    SlopeSeries out;
    out.source_id = source_id;
    out.points.reserve(reduced.size());
    for (const ReducedPoint& p : reduced)
        out.points.push_back({p.value, p.time_index, std::nullopt, std::nullopt});
    for (std::size_t i = 0; i + 1 < reduced.size(); ++i) {
        const ReducedPoint& l = reduced[i];
        const ReducedPoint& r = reduced[i + 1];
        if (r.time_index <= l.time_index)
            throw std::invalid_argument("time indices must be strictly increasing");
        const double theta =
            std::atan((r.value - l.value) / static_cast<double>(r.time_index - l.time_index));
        const double s = std::sin(theta);
        out.points[i].right_sin = s;
        out.points[i + 1].left_sin = s;
    }
    return out;
}

// Reduction budget: either an absolute point count or a fraction of the raw
// length. The fractional form is clamped to [5, 256] points after rounding.
class SegmentBudget {
public:
    SegmentBudget() = default;  // 20% of the raw length

    static SegmentBudget points(std::size_t count) {
        if (count < 2) throw std::invalid_argument("segment budget must be at least 2");
        SegmentBudget b;
        b.count_ = count;
        return b;
    }

    static SegmentBudget fraction(double f) {
        if (!(f > 0.0 && f < 1.0))
            throw std::invalid_argument("fractional segment budget must lie in (0, 1)");
        SegmentBudget b;
        b.fraction_ = f;
        return b;
    }

    std::size_t resolve(std::size_t raw_length) const {
        if (count_) return *count_;
        const auto scaled =
            static_cast<std::size_t>(std::llround(fraction_ * static_cast<double>(raw_length)));
        return std::clamp<std::size_t>(scaled, 5, 256);
    }

private:
    std::optional<std::size_t> count_;
    double fraction_ = 0.2;
};

// standardize -> segment -> annotate, the full preprocessing for one series.
inline SlopeSeries prepare_series(const RawSeries& raw, const SegmentBudget& budget = {}) {
    const RawSeries scaled = standardize(raw);
    const std::vector<ReducedPoint> reduced =
        segment_extrema(scaled, budget.resolve(scaled.values.size()));
    return annotate_slopes(reduced, raw.id);
}

inline Dataset prepare_dataset(std::span<const RawSeries> raws, const SegmentBudget& budget = {},
                               std::string name = {}) {
    if (raws.empty()) throw std::invalid_argument("dataset must contain at least one series");
    Dataset data;
    data.name = std::move(name);
    data.series.reserve(raws.size());
    data.labels.reserve(raws.size());
    std::set<int> classes;
    bool all_labeled = true;
    for (const RawSeries& raw : raws) {
        data.series.push_back(prepare_series(raw, budget));
        data.labels.push_back(raw.label);
        if (raw.label)
            classes.insert(*raw.label);
        else
            all_labeled = false;
    }
    if (all_labeled && !classes.empty()) data.k_hint = classes.size();
    return data;
}

}  // namespace tsclust
