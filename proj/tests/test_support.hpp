// Brute-force oracles and synthetic data generators shared by the unit and
// acceptance suites. Everything here is deliberately independent of the
// library's dynamic-programming implementations: costs are minimized by
// explicit path or edit-script enumeration.
#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsclust/series.hpp"

namespace testsupport {

// --- DTW oracle -------------------------------------------------------------
// Minimum over every monotone warping path from (0,0) to (N-1,M-1) of the
// accumulated local distance, where a diagonal arrival (including the start
// cell) counts the local distance twice and horizontal/vertical arrivals
// count it once.
template <typename SeqA, typename SeqB, typename Local>
double dtw_bruteforce(const SeqA& s1, const SeqB& s2, Local&& local) {
    const std::size_t n = std::size(s1);
    const std::size_t m = std::size(s2);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t, double)> walk =
        [&](std::size_t i, std::size_t j, double acc) {
            if (i + 1 == n && j + 1 == m) {
                best = std::min(best, acc);
                return;
            }
            if (i + 1 < n) walk(i + 1, j, acc + local(s1[i + 1], s2[j]));
            if (j + 1 < m) walk(i, j + 1, acc + local(s1[i], s2[j + 1]));
            if (i + 1 < n && j + 1 < m)
                walk(i + 1, j + 1, acc + 2.0 * local(s1[i + 1], s2[j + 1]));
        };
    walk(0, 0, 2.0 * local(s1[0], s2[0]));
    return best;
}

// --- EDR / LCSS oracles -----------------------------------------------------
// Plain exhaustive recursions of the definitions, no memoization.
inline std::size_t edr_recursive(const std::vector<double>& a, const std::vector<double>& b,
                                 double eps, std::size_t i = 0, std::size_t j = 0) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    const std::size_t sub = std::abs(a[i] - b[j]) <= eps ? 0 : 1;
    return std::min({edr_recursive(a, b, eps, i + 1, j + 1) + sub,
                     edr_recursive(a, b, eps, i + 1, j) + 1,
                     edr_recursive(a, b, eps, i, j + 1) + 1});
}

inline std::size_t lcss_recursive(const std::vector<double>& a, const std::vector<double>& b,
                                  double eps, std::optional<std::size_t> delta,
                                  std::size_t i = 0, std::size_t j = 0) {
    if (i == a.size() || j == b.size()) return 0;
    const std::size_t pi = i + 1, pj = j + 1;  // 1-based positions for the window
    const std::size_t gap = pi > pj ? pi - pj : pj - pi;
    if ((!delta || gap <= *delta) && std::abs(a[i] - b[j]) <= eps)
        return 1 + lcss_recursive(a, b, eps, delta, i + 1, j + 1);
    return std::max(lcss_recursive(a, b, eps, delta, i + 1, j),
                    lcss_recursive(a, b, eps, delta, i, j + 1));
}

// --- pair-count oracle ------------------------------------------------------
struct PairTally {
    std::uint64_t a = 0, b = 0, c = 0, d = 0;
};

inline PairTally pair_tally_bruteforce(const std::vector<int>& truth,
                                       const std::vector<std::size_t>& clusters) {
    PairTally t;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        for (std::size_t j = i + 1; j < truth.size(); ++j) {
            const bool same_class = truth[i] == truth[j];
            const bool same_cluster = clusters[i] == clusters[j];
            if (same_class && same_cluster) ++t.a;
            else if (same_class) ++t.b;
            else if (same_cluster) ++t.c;
            else ++t.d;
        }
    }
    return t;
}

// --- sequence enumeration ---------------------------------------------------
// Every sequence of length min_len..max_len over the given alphabet.
inline std::vector<std::vector<double>> all_sequences(const std::vector<double>& alphabet,
                                                      std::size_t min_len, std::size_t max_len) {
    std::vector<std::vector<double>> out;
    std::vector<std::vector<double>> frontier = {{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<double>> next;
        for (const auto& seq : frontier) {
            for (double v : alphabet) {
                auto grown = seq;
                grown.push_back(v);
                next.push_back(std::move(grown));
            }
        }
        frontier = std::move(next);
        if (len >= min_len) out.insert(out.end(), frontier.begin(), frontier.end());
    }
    return out;
}

// --- synthetic datasets -----------------------------------------------------
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Three shape families (sine, ramp, square) of the given length with additive
// amplitude jitter and random cyclic time shifts up to 10% of the length.
inline std::vector<tsclust::RawSeries> shape_families(std::size_t per_family, std::size_t length,
                                                      std::uint64_t seed, double jitter = 0.1) {
    std::mt19937_64 rng(seed);
    std::vector<tsclust::RawSeries> out;
    const double tau = 2.0 * std::acos(-1.0);
    for (int family = 0; family < 3; ++family) {
        for (std::size_t s = 0; s < per_family; ++s) {
            const std::size_t shift = static_cast<std::size_t>(
                uniform(rng, 0.0, static_cast<double>(length) / 10.0));
            tsclust::RawSeries series;
            series.label = family + 1;
            series.id = out.size();
            series.values.reserve(length);
            for (std::size_t t = 0; t < length; ++t) {
                const double phase =
                    static_cast<double>((t + shift) % length) / static_cast<double>(length);
                double v = 0.0;
                if (family == 0) v = std::sin(tau * phase);
                else if (family == 1) v = 2.0 * phase - 1.0;
                else v = std::sin(tau * phase) >= 0.0 ? 1.0 : -1.0;
                series.values.push_back(v + uniform(rng, -jitter, jitter));
            }
            out.push_back(std::move(series));
        }
    }
    return out;
}

// Triangle-wave families sharing the same levels (peaks at +/-1) but with
// different segment slopes, set by the period. Slope differences are the only
// stable cue separating the families.
inline std::vector<tsclust::RawSeries> slope_families(std::size_t per_family, std::size_t length,
                                                      std::uint64_t seed, double jitter = 0.1) {
    std::mt19937_64 rng(seed);
    std::vector<tsclust::RawSeries> out;
    const std::vector<std::size_t> periods = {20, 44, 96};
    for (std::size_t family = 0; family < periods.size(); ++family) {
        const double period = static_cast<double>(periods[family]);
        for (std::size_t s = 0; s < per_family; ++s) {
            const std::size_t shift = static_cast<std::size_t>(
                uniform(rng, 0.0, static_cast<double>(length) / 10.0));
            tsclust::RawSeries series;
            series.label = static_cast<int>(family) + 1;
            series.id = out.size();
            series.values.reserve(length);
            for (std::size_t t = 0; t < length; ++t) {
                const double phase = std::fmod(static_cast<double>(t + shift), period) / period;
                const double tri = phase < 0.5 ? 4.0 * phase - 1.0 : 3.0 - 4.0 * phase;
                series.values.push_back(tri + uniform(rng, -jitter, jitter));
            }
            out.push_back(std::move(series));
        }
    }
    return out;
}

// Unstructured random walks, for tiny-instance optimality checks.
inline std::vector<tsclust::RawSeries> random_walks(std::size_t count, std::size_t length,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<tsclust::RawSeries> out;
    for (std::size_t s = 0; s < count; ++s) {
        tsclust::RawSeries series;
        series.label = static_cast<int>(s % 2) + 1;
        series.id = s;
        double v = uniform(rng, -0.5, 0.5);
        for (std::size_t t = 0; t < length; ++t) {
            v += uniform(rng, -0.2, 0.2);
            series.values.push_back(v);
        }
        out.push_back(std::move(series));
    }
    return out;
}

// Writes series as UCR comma-separated lines: label first, then values.
inline void write_ucr(const std::filesystem::path& path,
                      const std::vector<tsclust::RawSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    for (const tsclust::RawSeries& s : series) {
        out << s.label.value_or(0);
        for (double v : s.values) out << ',' << tsclust::format_double(v);
        out << '\n';
    }
}

// Fresh directory under the system temp root.
inline std::filesystem::path make_temp_dir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("tsclust_" + tag + "_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace testsupport
