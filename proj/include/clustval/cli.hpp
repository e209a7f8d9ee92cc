#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clustval/csv.hpp"
#include "clustval/cvi.hpp"
#include "clustval/datagen.hpp"
#include "clustval/errors.hpp"
#include "clustval/harness.hpp"
#include "clustval/hierarchical.hpp"
#include "clustval/kmeans.hpp"
#include "clustval/suite.hpp"
#include "clustval/svg.hpp"

namespace clustval {
namespace detail {

namespace fs = std::filesystem;

/// Explicit seed, or a recorded entropy seed echoed for reproducibility.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given, std::ostream& err) {
    if (given) return *given;
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << seed << "\n";
    return seed;
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw data_error("cannot write '" + path.string() + "'");
    os << content;
    if (!os) throw data_error("short write to '" + path.string() + "'");
}

inline Dataset load_dataset_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    return load_dataset_csv(in, path.string());
}

inline Partition load_partition_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    return load_partition_csv(in, path.string());
}

inline std::vector<Cvi> resolve_indices(const std::string& list) {
    if (list.empty()) {
        const auto& ids = all_cvis();
        return {ids.begin(), ids.end()};
    }
    return parse_cvi_list(list);
}

struct GenerateArgs {
    int k = 2;
    int n = 500;
    int imbalance = 0;
    int replicates = 1;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

inline int run_generate(const GenerateArgs& a, std::ostream& /*out*/, std::ostream& err) {
    std::uint64_t master = resolve_seed(a.seed, err);
    if (a.replicates < 1) throw usage_error("--replicates must be at least 1");
    fs::create_directories(a.out_dir);
    for (int r = 0; r < a.replicates; ++r) {
        GenConfig cfg;
        cfg.n_objects = static_cast<std::size_t>(a.n);
        cfg.k = a.k;
        cfg.imbalance_pct = a.imbalance;
        cfg.seed = mix_seed(master, static_cast<std::uint64_t>(r));
        SyntheticDataset sd = generate_synthetic(cfg);

        char stem[64];
        std::snprintf(stem, sizeof(stem), "synthetic_k%02d_imb%02d_rep%02d", a.k, a.imbalance, r);
        fs::path csv_path = fs::path(a.out_dir) / (std::string(stem) + ".csv");
        std::ostringstream csv;
        save_dataset_csv(csv, sd.data, {"x", "y"});
        write_file(csv_path, csv.str());

        nlohmann::json meta;
        meta["dataset_id"] = stem;
        meta["n_objects"] = sd.meta.config.n_objects;
        meta["k"] = sd.meta.config.k;
        meta["imbalance_pct"] = sd.meta.config.imbalance_pct;
        meta["seed"] = sd.meta.config.seed;
        meta["master_seed"] = master;
        meta["replicate"] = r;
        meta["center_range"] = {sd.meta.config.center_range.lo, sd.meta.config.center_range.hi};
        meta["variance_range"] = {sd.meta.config.variance_range.lo, sd.meta.config.variance_range.hi};
        meta["separation_factor"] = sd.meta.config.separation_factor;
        meta["max_attempts"] = sd.meta.config.max_attempts;
        meta["shrink_factor"] = sd.meta.config.shrink_factor;
        meta["variance_floor"] = sd.meta.config.variance_floor;
        meta["shrink_events"] = sd.meta.shrink_events;
        meta["final_variance_ceiling"] = sd.meta.final_variance_ceiling;
        std::vector<std::size_t> sizes;
        std::vector<std::vector<double>> centers;
        std::vector<double> variances;
        for (const ClusterSpec& c : sd.meta.clusters) {
            sizes.push_back(c.size);
            centers.push_back({c.cx, c.cy});
            variances.push_back(c.variance);
        }
        meta["sizes"] = sizes;
        meta["centers"] = centers;
        meta["variances"] = variances;
        meta["imbalance_ratio"] = imbalance_ratio(*sd.data.ground_truth());
        write_file(fs::path(a.out_dir) / (std::string(stem) + ".meta.json"), meta.dump(2) + "\n");
        err << "wrote " << csv_path.string() << "\n";
    }
    return 0;
}

struct ClusterArgs {
    std::string data;
    std::string algorithm;
    int k = 2;
    std::optional<std::uint64_t> seed;
    std::string out;
};

inline int run_cluster(const ClusterArgs& a, std::ostream& /*out*/, std::ostream& err) {
    Dataset data = load_dataset_file(a.data);
    Partition p = [&] {
        if (a.algorithm == "kmeans") {
            return kmeans(data, a.k, resolve_seed(a.seed, err));
        }
        Linkage linkage;
        try {
            linkage = parse_linkage(a.algorithm);
        } catch (const usage_error&) {
            throw usage_error("unknown algorithm '" + a.algorithm +
                              "' (expected kmeans, single, average, complete or ward)");
        }
        return hierarchical_cut(euclidean_distances(data), linkage, a.k);
    }();
    std::ostringstream body;
    save_partition_csv(body, p);
    write_file(a.out, body.str());
    err << "wrote " << a.out << "\n";
    return 0;
}

struct ValidateArgs {
    std::string data;
    std::string partition;
    std::string indices;
    std::string curves_dir;
};

inline int run_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    Dataset data = load_dataset_file(a.data);
    Partition p = load_partition_file(a.partition);
    if (p.size() != data.size()) {
        throw data_error("partition covers " + std::to_string(p.size()) +
                         " objects but the dataset has " + std::to_string(data.size()));
    }
    std::vector<Cvi> indices = resolve_indices(a.indices);

    CondensedPairVector d = euclidean_distances(data);
    bool any_curve = std::any_of(indices.begin(), indices.end(),
                                 [](Cvi id) { return !is_classic(id); });
    std::optional<SweepTable> table;
    if (any_curve) {
        table = confusion_sweep(similarities_from_distances(d), pairwise_co_membership(p));
    }

    bool any_undefined = false;
    out << "index,score\n";
    for (Cvi id : indices) {
        try {
            double score;
            switch (id) {
                case Cvi::aucc: score = aucc(*table); break;
                case Cvi::auprc: score = auprc(*table); break;
                case Cvi::auiprc: score = auiprc(*table); break;
                case Cvi::sauprc: score = sauprc(*table); break;
                default: score = compute_index(index_descriptor(id), data, d, p); break;
            }
            out << to_string(id) << ',' << format_score(score) << '\n';
        } catch (const degenerate_error& e) {
            out << to_string(id) << ",\n";
            err << "note: " << to_string(id) << " undefined: " << e.what() << "\n";
            any_undefined = true;
        }
    }

    if (!a.curves_dir.empty() && table) {
        fs::create_directories(a.curves_dir);
        bool want_roc = false, want_pr = false, want_ipr = false;
        for (Cvi id : indices) {
            want_roc |= id == Cvi::aucc;
            want_pr |= id == Cvi::auprc || id == Cvi::sauprc;
            want_ipr |= id == Cvi::auiprc || id == Cvi::sauprc;
        }
        auto dump = [&](CurveKind kind, const char* name) {
            std::ostringstream body;
            write_curve_csv(body, extract_curve(*table, kind));
            write_file(fs::path(a.curves_dir) / name, body.str());
        };
        if (want_roc) dump(CurveKind::roc, "roc.csv");
        if (want_pr) dump(CurveKind::pr, "pr.csv");
        if (want_ipr) dump(CurveKind::inverse_pr, "inverse_pr.csv");
    }
    return any_undefined ? 3 : 0;
}

struct BenchmarkArgs {
    std::string data_dir;
    std::string indices;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool stratify = false;
    double alpha = 0.05;
    std::string score_mode = "oriented";
};

inline int read_imbalance_metadata(const fs::path& meta_path) {
    if (!fs::exists(meta_path)) return -1;
    std::ifstream in(meta_path);
    if (!in) throw data_error("cannot open '" + meta_path.string() + "'");
    try {
        nlohmann::json meta = nlohmann::json::parse(in);
        return meta.value("imbalance_pct", -1);
    } catch (const std::exception& e) {
        throw data_error(meta_path.string() + ": " + e.what());
    }
}

inline int run_benchmark(const BenchmarkArgs& a, std::ostream& /*out*/, std::ostream& err) {
    ScoreMode mode = parse_score_mode(a.score_mode);
    std::vector<Cvi> indices = resolve_indices(a.indices);
    detail::rank_test_constants(a.alpha);  // reject a bad alpha before the evaluation loop
    std::uint64_t master = resolve_seed(a.seed, err);

    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(a.data_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw data_error("no .csv datasets in '" + a.data_dir + "'");

    // Read all sidecars up front so a missing one aborts before any evaluation.
    std::vector<int> imbalances(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        fs::path meta_path = paths[i];
        meta_path.replace_extension(".meta.json");
        imbalances[i] = read_imbalance_metadata(meta_path);
        if (a.stratify && imbalances[i] < 0) {
            throw data_error("dataset '" + paths[i].stem().string() +
                             "' carries no imbalance metadata; cannot stratify");
        }
    }

    std::vector<DatasetEvaluation> evals;
    evals.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        Dataset data = load_dataset_file(paths[i]);
        std::string stem = paths[i].stem().string();
        err << "evaluating " << stem << " (" << i + 1 << "/" << paths.size() << ")\n";
        evals.push_back(evaluate_dataset(data, indices, mix_seed(master, i), mode, stem, imbalances[i]));
    }

    BenchmarkReport report = build_report(evals, a.alpha, mode, master);
    fs::create_directories(a.out_dir);
    fs::path out_dir(a.out_dir);
    {
        std::ostringstream body;
        write_records_csv(body, evals);
        write_file(out_dir / "records.csv", body.str());
    }
    {
        std::ostringstream body;
        write_correlations_csv(body, report.correlations);
        write_file(out_dir / "correlations.csv", body.str());
    }
    {
        std::ostringstream body;
        write_report_csv(body, report);
        write_file(out_dir / "report.csv", body.str());
    }

    std::vector<StratumSummary> strata;
    if (a.stratify) {
        strata = stratify_by_imbalance(report.correlations);
        std::ostringstream body;
        write_strata_csv(body, strata, report.cvis);
        write_file(out_dir / "strata_summary.csv", body.str());
    } else {
        strata.push_back(summarize_all(report.correlations));
    }
    write_file(out_dir / "boxplot.svg", boxplot_svg(strata, report.cvis));
    write_file(out_dir / "cd_diagram.svg",
               cd_diagram_svg(report.cvis, report.mean_rank, report.nemenyi_cd,
                              report.friedman_p_value));
    err << "wrote " << (out_dir / "report.csv").string() << "\n";
    return 0;
}

struct ReportArgs {
    std::string in_dir;
    std::string format = "svg";
    std::string out_dir;
};

inline int run_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
    if (a.format != "svg" && a.format != "csv") {
        throw usage_error("unknown format '" + a.format + "' (expected svg or csv)");
    }
    fs::path in_dir(a.in_dir);
    fs::path report_path = in_dir / "report.csv";
    fs::path corr_path = in_dir / "correlations.csv";

    if (a.format == "csv") {
        std::ifstream in(report_path, std::ios::binary);
        if (!in) throw data_error("cannot open '" + report_path.string() + "'");
        out << in.rdbuf();
        return 0;
    }

    std::ifstream corr_in(corr_path, std::ios::binary);
    if (!corr_in) throw data_error("cannot open '" + corr_path.string() + "'");
    CorrelationTable table = read_correlations_csv(corr_in, corr_path.string());

    std::ifstream report_in(report_path, std::ios::binary);
    if (!report_in) throw data_error("cannot open '" + report_path.string() + "'");
    ReportSummary summary = read_report_csv(report_in, report_path.string());

    bool all_known = !table.imbalance_pct.empty() &&
                     std::all_of(table.imbalance_pct.begin(), table.imbalance_pct.end(),
                                 [](int pct) { return pct >= 0; });
    std::vector<StratumSummary> strata;
    if (all_known) strata = stratify_by_imbalance(table);
    else strata.push_back(summarize_all(table));

    fs::path out_dir(a.out_dir.empty() ? a.in_dir : a.out_dir);
    fs::create_directories(out_dir);
    write_file(out_dir / "boxplot.svg", boxplot_svg(strata, table.cvis));
    write_file(out_dir / "cd_diagram.svg",
               cd_diagram_svg(summary.cvis, summary.mean_rank, summary.nemenyi_cd,
                              summary.friedman_p_value));
    err << "wrote " << (out_dir / "boxplot.svg").string() << " and "
        << (out_dir / "cd_diagram.svg").string() << "\n";
    return 0;
}

}  // namespace detail

/// Parses and runs one CLI invocation. `args` excludes the program name.
/// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
/// degeneracy.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"clustering validation toolkit: curve-based and classical "
                 "validity indices, clustering, synthetic data, benchmarks"};
    app.name("clustval");
    app.require_subcommand(1);

    detail::GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write synthetic 2-D Gaussian datasets");
    g->add_option("--k", gen.k, "cluster count")->required();
    g->add_option("--n", gen.n, "objects per dataset (default 500)");
    g->add_option("--imbalance", gen.imbalance, "percent of objects in cluster 0: 0,10,...,90");
    g->add_option("--replicates", gen.replicates, "datasets to generate (default 1)");
    g->add_option("--seed", gen.seed, "master seed (random when omitted, echoed to stderr)");
    g->add_option("--out", gen.out_dir, "output directory")->required();

    detail::ClusterArgs clu;
    auto* c = app.add_subcommand("cluster", "cluster a CSV dataset and write the partition");
    c->add_option("--data", clu.data, "dataset CSV")->required();
    c->add_option("--algorithm", clu.algorithm, "kmeans, single, average, complete or ward")
        ->required();
    c->add_option("--k", clu.k, "cluster count")->required();
    c->add_option("--seed", clu.seed, "seed for kmeans (random when omitted)");
    c->add_option("--out", clu.out, "partition file to write")->required();

    detail::ValidateArgs val;
    auto* v = app.add_subcommand("validate", "score a partition with validity indices");
    v->add_option("--data", val.data, "dataset CSV")->required();
    v->add_option("--partition", val.partition, "partition file (header 'label')")->required();
    v->add_option("--indices", val.indices, "comma-separated index ids (default: all)");
    v->add_option("--curves", val.curves_dir, "directory for ROC/PR curve dumps");

    detail::BenchmarkArgs bench;
    auto* b = app.add_subcommand("benchmark", "run the evaluation protocol over a dataset directory");
    b->add_option("--data-dir", bench.data_dir, "directory of labelled dataset CSVs")->required();
    b->add_option("--indices", bench.indices, "comma-separated index ids (default: all)");
    b->add_option("--seed", bench.seed, "master seed (random when omitted)");
    b->add_option("--out", bench.out_dir, "output directory")->required();
    b->add_flag("--stratify-imbalance", bench.stratify, "summarize per imbalance stratum");
    b->add_option("--alpha", bench.alpha, "significance level, 0.05 or 0.10 (default 0.05)");
    b->add_option("--score-mode", bench.score_mode, "oriented (default) or raw");

    detail::ReportArgs rep;
    auto* r = app.add_subcommand("report", "render figures from benchmark output");
    r->add_option("--in", rep.in_dir, "benchmark output directory")->required();
    r->add_option("--format", rep.format, "svg (default) or csv");
    r->add_option("--out", rep.out_dir, "figure directory for svg output (default: --in); csv prints to stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (g->parsed()) return detail::run_generate(gen, out, err);
        if (c->parsed()) return detail::run_cluster(clu, out, err);
        if (v->parsed()) return detail::run_validate(val, out, err);
        if (b->parsed()) return detail::run_benchmark(bench, out, err);
        if (r->parsed()) return detail::run_report(rep, out, err);
        err << "error: no subcommand given\n";
        return 1;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const degenerate_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const data_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace clustval
