#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsclust/common.hpp"
#include "tsclust/distance.hpp"
#include "tsclust/pso.hpp"
#include "tsclust/series.hpp"
#include "tsclust/ucr_io.hpp"
#include "tsclust/validity.hpp"

namespace tsclust {

struct RunConfig {
    std::filesystem::path data_path;
    std::optional<std::size_t> k;       // default: number of distinct labels in the file
    std::vector<DistanceSpec> distances;
    std::size_t reps = 10;
    std::uint64_t seed_base = 0;
    SegmentBudget segment_budget;       // default: 20% of the raw length
    PsoConfig pso;                      // k and seed are set per run
    std::filesystem::path out_dir;

    void validate() const {
        if (reps < 1) throw std::invalid_argument("reps must be >= 1");
        if (distances.empty()) throw std::invalid_argument("at least one distance is required");
    }
};

// One (distance, repetition) outcome with every validity measure.
struct RunResult {
    std::string dataset;
    std::string distance;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    double purity = 0.0;
    double csm = 0.0;
    double jaccard = 0.0;
    double rand = 0.0;
    double fm = 0.0;
    double sse = 0.0;
    double combined = 0.0;
    double runtime_seconds = 0.0;
};

struct RunTrace {
    std::string dataset;
    std::string distance;
    std::size_t rep = 0;
    std::vector<std::pair<std::size_t, double>> trace;
};

struct ExperimentOutput {
    std::vector<RunResult> results;
    std::vector<RunTrace> traces;
    std::vector<std::string> failures;  // per-run failures, recorded and skipped
};

// Mean and sample standard deviation of one metric for one (dataset,
// distance) group; `best` flags the winner of the metric within the dataset.
struct SummaryRow {
    std::string dataset;
    std::string distance;
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
    bool best = false;
};

namespace detail {

inline const std::vector<std::pair<std::string, double RunResult::*>>& metric_fields() {
    static const std::vector<std::pair<std::string, double RunResult::*>> fields = {
        {"purity", &RunResult::purity}, {"csm", &RunResult::csm},
        {"jaccard", &RunResult::jaccard}, {"rand", &RunResult::rand},
        {"fm", &RunResult::fm},         {"sse", &RunResult::sse},
        {"combined", &RunResult::combined}, {"runtime_seconds", &RunResult::runtime_seconds}};
    return fields;
}

// Lower is better for sse, combined and runtime; higher for the rest.
inline bool lower_is_better(const std::string& metric) {
    return metric == "sse" || metric == "combined" || metric == "runtime_seconds";
}

inline std::string sanitize(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out.empty() ? std::string("dataset") : out;
}

}  // namespace detail

// The full protocol for one dataset file: preprocess once, then for each
// distance and repetition run the swarm with seed = seed_base + rep and score
// the returned partition against the file's labels. Per-run failures are
// recorded in the output and skipped.
inline ExperimentOutput run_experiment(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<RawSeries> raws = load_ucr(cfg.data_path);
    const std::string dataset = detail::sanitize(cfg.data_path.stem().string());
    const Dataset data = prepare_dataset(raws, cfg.segment_budget, dataset);

    std::vector<int> truth;
    truth.reserve(data.size());
    for (const auto& label : data.labels) {
        if (!label)
            throw std::runtime_error("dataset has unlabeled series; validity scoring needs labels");
        truth.push_back(*label);
    }
    std::size_t k = cfg.k.value_or(data.k_hint.value_or(0));
    if (k < 2) throw std::invalid_argument("clustering requires K >= 2");

    ExperimentOutput out;
    for (const DistanceSpec& spec : cfg.distances) {
        const std::string distance_name = to_string(spec.kind);
        for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
            const std::uint64_t seed = cfg.seed_base + rep;
            PsoConfig pso_cfg = cfg.pso;
            pso_cfg.k = k;
            pso_cfg.seed = seed;
            try {
                const auto start = std::chrono::steady_clock::now();
                PsoClusterer clusterer(data, spec, pso_cfg);
                PsoRun run = clusterer.run();
                const auto stop = std::chrono::steady_clock::now();

                auto dist = [&clusterer](std::size_t i, std::size_t j) {
                    return clusterer.pair_distance(i, j);
                };
                const PairCounts pc = pair_counts(truth, run.partition);
                RunResult r;
                r.dataset = dataset;
                r.distance = distance_name;
                r.rep = rep;
                r.seed = seed;
                r.purity = purity(truth, run.partition);
                r.csm = csm(truth, run.partition);
                r.jaccard = jaccard(pc);
                r.rand = rand_index(pc);
                r.fm = folkes_mallow(pc);
                r.sse = sse(run.partition, dist);
                r.combined = combined(run.partition, dist, pso_cfg.w1, pso_cfg.w2);
                r.runtime_seconds = std::chrono::duration<double>(stop - start).count();
                out.results.push_back(std::move(r));
                out.traces.push_back({dataset, distance_name, rep, std::move(run.trace)});
            } catch (const std::exception& e) {
                const std::string msg = dataset + "/" + distance_name + "/rep " +
                                        std::to_string(rep) + " failed: " + e.what();
                warn(msg);
                out.failures.push_back(msg);
            }
        }
    }
    return out;
}

inline std::vector<SummaryRow> summarize(std::span<const RunResult> results) {
    if (results.empty()) throw std::invalid_argument("nothing to summarize");

    // Group in first-appearance order so output is deterministic.
    std::vector<std::pair<std::string, std::string>> groups;
    std::map<std::pair<std::string, std::string>, std::vector<const RunResult*>> by_group;
    for (const RunResult& r : results) {
        const auto key = std::make_pair(r.dataset, r.distance);
        auto [it, inserted] = by_group.try_emplace(key);
        if (inserted) groups.push_back(key);
        it->second.push_back(&r);
    }

    std::vector<SummaryRow> rows;
    for (const auto& key : groups) {
        const auto& members = by_group.at(key);
        if (members.size() == 1)
            warn("summarize: single repetition for " + key.first + "/" + key.second +
                 ", standard deviation reported as 0");
        for (const auto& [metric, field] : detail::metric_fields()) {
            double sum = 0.0;
            for (const RunResult* r : members) sum += r->*field;
            const double mean = sum / static_cast<double>(members.size());
            double var = 0.0;
            if (members.size() > 1) {
                for (const RunResult* r : members) {
                    const double d = r->*field - mean;
                    var += d * d;
                }
                var /= static_cast<double>(members.size() - 1);
            }
            rows.push_back({key.first, key.second, metric, mean, std::sqrt(var), false});
        }
    }

    // Flag the best mean per (dataset, metric).
    for (SummaryRow& row : rows) {
        bool best = true;
        for (const SummaryRow& other : rows) {
            if (other.dataset != row.dataset || other.metric != row.metric) continue;
            if (detail::lower_is_better(row.metric) ? other.mean < row.mean
                                                    : other.mean > row.mean)
                best = false;
        }
        row.best = best;
    }
    return rows;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // LF endings everywhere
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    return out;
}

}  // namespace detail

// Writes results.csv, summary.csv, one trace_<dataset>_<distance>_<rep>.csv
// per run, and sse_bars.csv (per-distance mean SSE) under out_dir.
inline void emit_outputs(const ExperimentOutput& output, std::span<const SummaryRow> summary,
                         const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        auto out = detail::open_out(out_dir / "results.csv");
        out << "dataset,distance,rep,seed,purity,csm,jaccard,rand,fm,sse,combined,"
               "runtime_seconds\n";
        for (const RunResult& r : output.results) {
            out << r.dataset << ',' << r.distance << ',' << r.rep << ',' << r.seed << ','
                << format_double(r.purity) << ',' << format_double(r.csm) << ','
                << format_double(r.jaccard) << ',' << format_double(r.rand) << ','
                << format_double(r.fm) << ',' << format_double(r.sse) << ','
                << format_double(r.combined) << ',' << format_double(r.runtime_seconds) << '\n';
        }
    }
    {
        auto out = detail::open_out(out_dir / "summary.csv");
        out << "dataset,distance,metric,mean,stddev,best\n";
        for (const SummaryRow& row : summary) {
            out << row.dataset << ',' << row.distance << ',' << row.metric << ','
                << format_double(row.mean) << ',' << format_double(row.stddev) << ','
                << (row.best ? 1 : 0) << '\n';
        }
    }
    {
        auto out = detail::open_out(out_dir / "sse_bars.csv");
        out << "dataset,distance,mean_sse\n";
        for (const SummaryRow& row : summary)
            if (row.metric == "sse")
                out << row.dataset << ',' << row.distance << ',' << format_double(row.mean)
                    << '\n';
    }
    for (const RunTrace& t : output.traces) {
        const std::string name =
            "trace_" + t.dataset + "_" + t.distance + "_" + std::to_string(t.rep) + ".csv";
        auto out = detail::open_out(out_dir / name);
        out << "iteration,global_best_fitness\n";
        for (const auto& [iter, fit] : t.trace)
            out << iter << ',' << format_double(fit) << '\n';
    }
}

}  // namespace tsclust
