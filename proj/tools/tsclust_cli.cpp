// Experiment harness: PSO medoid clustering of UCR-format time-series under
// elastic distance measures, plus a one-shot pairwise distance printer.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsclust/tsclust.hpp"

namespace {

// "--segment-budget 0.15" is a fraction of the raw length, "--segment-budget
// 32" an absolute point count.
tsclust::SegmentBudget parse_budget(const std::string& text) {
    const double value = std::stod(text);
    if (value > 0.0 && value < 1.0) return tsclust::SegmentBudget::fraction(value);
    if (value >= 2.0 && value == static_cast<double>(static_cast<std::size_t>(value)))
        return tsclust::SegmentBudget::points(static_cast<std::size_t>(value));
    throw CLI::ValidationError("--segment-budget",
                               "expected a fraction in (0,1) or an integer >= 2");
}

struct ClusterArgs {
    std::string data;
    std::size_t k = 0;
    std::vector<std::string> distances = {"dtw-bsd", "dtw-ed", "edr", "lcss"};
    std::size_t reps = 10;
    std::uint64_t seed = 0;
    std::size_t iters = 500;
    std::size_t swarm = 30;
    double inertia_start = 1.2;
    double inertia_end = 0.4;
    double c1 = 1.5;
    double c2 = 1.5;
    double w1 = 0.5;
    double w2 = 0.5;
    std::string segment_budget = "0.2";
    double edr_eps = 0.2;
    double lcss_eps = 0.2;
    long long lcss_delta = -1;
    double minkowski_b = 2.0;
    bool normalize_dtw = false;
    std::string out;
};

tsclust::DistanceSpec make_spec(const std::string& name, const ClusterArgs& args) {
    tsclust::DistanceSpec spec;
    spec.kind = tsclust::parse_distance_kind(name);
    spec.minkowski_b = args.minkowski_b;
    spec.edr_epsilon = args.edr_eps;
    spec.lcss_epsilon = args.lcss_eps;
    if (args.lcss_delta >= 0) spec.lcss_delta = static_cast<std::size_t>(args.lcss_delta);
    spec.normalize_dtw = args.normalize_dtw;
    return spec;
}

int run_cluster(const ClusterArgs& args) {
    tsclust::RunConfig cfg;
    cfg.data_path = args.data;
    if (args.k > 0) cfg.k = args.k;
    for (const std::string& name : args.distances) cfg.distances.push_back(make_spec(name, args));
    cfg.reps = args.reps;
    cfg.seed_base = args.seed;
    cfg.segment_budget = parse_budget(args.segment_budget);
    cfg.pso.swarm_size = args.swarm;
    cfg.pso.max_iters = args.iters;
    cfg.pso.inertia_start = args.inertia_start;
    cfg.pso.inertia_end = args.inertia_end;
    cfg.pso.c1 = args.c1;
    cfg.pso.c2 = args.c2;
    cfg.pso.w1 = args.w1;
    cfg.pso.w2 = args.w2;
    cfg.out_dir = args.out;

    const tsclust::ExperimentOutput output = tsclust::run_experiment(cfg);
    if (output.results.empty()) {
        std::cerr << "error: every run failed\n";
        return 2;
    }
    const std::vector<tsclust::SummaryRow> summary = tsclust::summarize(output.results);
    tsclust::emit_outputs(output, summary, cfg.out_dir);

    for (const tsclust::SummaryRow& row : summary)
        if (row.metric != "runtime_seconds")
            std::cout << row.dataset << ' ' << row.distance << ' ' << row.metric << ": mean "
                      << tsclust::format_double(row.mean) << " stddev "
                      << tsclust::format_double(row.stddev) << (row.best ? "  (best)" : "")
                      << '\n';
    std::cout << "wrote " << (cfg.out_dir / "results.csv").string() << ", "
              << (cfg.out_dir / "summary.csv").string() << ", " << output.traces.size()
              << " trace files\n";
    if (!output.failures.empty()) {
        std::cerr << output.failures.size() << " run(s) failed:\n";
        for (const std::string& f : output.failures) std::cerr << "  " << f << '\n';
        return 2;
    }
    return 0;
}

struct DistanceArgs {
    std::string a;
    std::string b;
    std::string measure = "dtw-bsd";
    std::string segment_budget = "0.2";
    double edr_eps = 0.2;
    double lcss_eps = 0.2;
    long long lcss_delta = -1;
    double minkowski_b = 2.0;
    bool normalize_dtw = false;
};

int run_distance(const DistanceArgs& args) {
    auto load_one = [&](const std::string& path) {
        const std::vector<tsclust::RawSeries> raws = tsclust::load_ucr(path);
        if (raws.size() != 1)
            throw std::runtime_error(path + ": expected exactly one series, got " +
                                     std::to_string(raws.size()));
        return raws.front();
    };
    const tsclust::SegmentBudget budget = parse_budget(args.segment_budget);
    const tsclust::SlopeSeries sa = tsclust::prepare_series(load_one(args.a), budget);
    const tsclust::SlopeSeries sb = tsclust::prepare_series(load_one(args.b), budget);

    tsclust::DistanceSpec spec;
    spec.kind = tsclust::parse_distance_kind(args.measure);
    spec.edr_epsilon = args.edr_eps;
    spec.lcss_epsilon = args.lcss_eps;
    if (args.lcss_delta >= 0) spec.lcss_delta = static_cast<std::size_t>(args.lcss_delta);
    spec.minkowski_b = args.minkowski_b;
    spec.normalize_dtw = args.normalize_dtw;

    std::cout << tsclust::format_double(tsclust::series_distance(sa, sb, spec)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-series clustering with slope-aware elastic distances"};
    app.require_subcommand(1);

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand(
        "cluster", "Cluster a UCR-format file and write result/summary/trace CSVs");
    cluster->add_option("--data", cluster_args.data, "UCR-format input file")
        ->required()
        ->check(CLI::ExistingFile);
    cluster->add_option("--k", cluster_args.k,
                        "number of clusters (default: distinct labels in the file)");
    cluster->add_option("--distance", cluster_args.distances,
                        "distance measures: dtw-bsd, dtw-ed, edr, lcss")
        ->delimiter(',');
    cluster->add_option("--reps", cluster_args.reps, "repetitions per distance");
    cluster->add_option("--seed", cluster_args.seed, "base seed; run r uses seed + r");
    cluster->add_option("--iters", cluster_args.iters, "swarm iterations");
    cluster->add_option("--swarm", cluster_args.swarm, "swarm size");
    cluster->add_option("--inertia-start", cluster_args.inertia_start, "initial inertia weight");
    cluster->add_option("--inertia-end", cluster_args.inertia_end, "final inertia weight");
    cluster->add_option("--c1", cluster_args.c1, "cognitive coefficient");
    cluster->add_option("--c2", cluster_args.c2, "social coefficient");
    cluster->add_option("--w1", cluster_args.w1, "combined-measure weight on compactness");
    cluster->add_option("--w2", cluster_args.w2, "combined-measure weight on separation");
    cluster->add_option("--segment-budget", cluster_args.segment_budget,
                        "points per series: fraction in (0,1) or integer count");
    cluster->add_option("--edr-eps", cluster_args.edr_eps, "EDR match tolerance");
    cluster->add_option("--lcss-eps", cluster_args.lcss_eps, "LCSS match tolerance");
    cluster->add_option("--lcss-delta", cluster_args.lcss_delta,
                        "LCSS warping window (default: unconstrained)");
    cluster->add_option("--minkowski-b", cluster_args.minkowski_b, "Minkowski order for DTW+ED");
    cluster->add_flag("--normalize-dtw", cluster_args.normalize_dtw,
                      "divide DTW costs by N + M");
    cluster->add_option("--out", cluster_args.out, "output directory")->required();

    DistanceArgs distance_args;
    CLI::App* distance = app.add_subcommand(
        "distance", "Print the distance between two one-series UCR files");
    distance->add_option("--a", distance_args.a, "first series file")
        ->required()
        ->check(CLI::ExistingFile);
    distance->add_option("--b", distance_args.b, "second series file")
        ->required()
        ->check(CLI::ExistingFile);
    distance->add_option("--measure", distance_args.measure,
                         "dtw-bsd, dtw-ed, edr, or lcss");
    distance->add_option("--segment-budget", distance_args.segment_budget,
                         "points per series: fraction in (0,1) or integer count");
    distance->add_option("--edr-eps", distance_args.edr_eps, "EDR match tolerance");
    distance->add_option("--lcss-eps", distance_args.lcss_eps, "LCSS match tolerance");
    distance->add_option("--lcss-delta", distance_args.lcss_delta, "LCSS warping window");
    distance->add_option("--minkowski-b", distance_args.minkowski_b,
                         "Minkowski order for DTW+ED");
    distance->add_flag("--normalize-dtw", distance_args.normalize_dtw,
                       "divide DTW costs by N + M");

    try {
        app.parse(argc, argv);
        if (*cluster) return run_cluster(cluster_args);
        return run_distance(distance_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const tsclust::ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    }
}
