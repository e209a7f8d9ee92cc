#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "clustval/classic_cvis.hpp"
#include "clustval/core.hpp"
#include "clustval/csv.hpp"
#include "clustval/curves.hpp"
#include "clustval/cvi.hpp"
#include "clustval/errors.hpp"
#include "clustval/external_validation.hpp"
#include "clustval/stats.hpp"
#include "clustval/suite.hpp"

namespace clustval {

/// Whether stored scores are orientation-adjusted (larger always better)
/// or left as the index defines them.
enum class ScoreMode { oriented, raw };

inline const char* to_string(ScoreMode mode) {
    return mode == ScoreMode::oriented ? "oriented" : "raw";
}

inline ScoreMode parse_score_mode(const std::string& name) {
    if (name == "oriented") return ScoreMode::oriented;
    if (name == "raw") return ScoreMode::raw;
    throw usage_error("unknown score mode '" + name + "' (expected oriented or raw)");
}

/// Scores of one candidate partition. `scores` runs parallel to the
/// configured CVI list; an empty cell marks an undefined score.
struct EvaluationRecord {
    std::string algorithm;
    int k = 0;
    std::vector<std::optional<double>> scores;
    std::optional<double> ari;
};

struct DatasetEvaluation {
    std::string dataset_id;
    int imbalance_pct = -1;  // -1 when the dataset carries no imbalance metadata
    std::vector<Cvi> cvis;
    std::vector<EvaluationRecord> records;
};

/// Runs the partition suite over one dataset and scores every partition
/// with every requested CVI plus ARI against ground truth. Undefined
/// scores are recorded as empty cells, never dropped.
inline DatasetEvaluation evaluate_dataset(const Dataset& data, const std::vector<Cvi>& cvis,
                                          std::uint64_t seed, ScoreMode mode = ScoreMode::oriented,
                                          std::string dataset_id = "dataset",
                                          int imbalance_pct = -1) {
    if (!data.ground_truth()) {
        throw data_error("dataset '" + dataset_id +
                         "' has no ground truth; the evaluation protocol requires one");
    }
    if (cvis.empty()) throw data_error("no indices requested");

    DatasetEvaluation eval;
    eval.dataset_id = std::move(dataset_id);
    eval.imbalance_pct = imbalance_pct;
    eval.cvis = cvis;

    bool any_curve = std::any_of(cvis.begin(), cvis.end(), [](Cvi id) { return !is_classic(id); });
    bool want_c_index = std::find(cvis.begin(), cvis.end(), Cvi::c_index) != cvis.end();

    CondensedPairVector distances = euclidean_distances(data);
    PairRanking ranking;  // built once per dataset, reused for every partition
    if (any_curve) ranking = PairRanking::from_similarities(similarities_from_distances(distances));

    std::vector<double> prefix;  // ascending-distance cumulative sums for the C index
    if (want_c_index) {
        std::vector<double> sorted(distances.values());
        std::sort(sorted.begin(), sorted.end());
        prefix.assign(1, 0.0);
        prefix.reserve(sorted.size() + 1);
        for (double v : sorted) prefix.push_back(prefix.back() + v);
    }

    std::vector<SuiteEntry> suite = partition_suite(data, seed);
    eval.records.reserve(suite.size());
    for (const SuiteEntry& entry : suite) {
        EvaluationRecord rec;
        rec.algorithm = entry.algorithm;
        rec.k = entry.k;
        rec.scores.resize(cvis.size());

        std::optional<SweepTable> table;
        if (any_curve) {
            table = confusion_sweep(ranking, pairwise_co_membership(entry.partition));
        }
        std::optional<double> pr, ipr;  // shared by auprc/auiprc/sauprc
        auto get_pr = [&] {
            if (!pr) pr = auprc(*table);
            return *pr;
        };
        auto get_ipr = [&] {
            if (!ipr) ipr = auiprc(*table);
            return *ipr;
        };

        for (std::size_t j = 0; j < cvis.size(); ++j) {
            Cvi id = cvis[j];
            try {
                double raw;
                switch (id) {
                    case Cvi::aucc: raw = aucc(*table); break;
                    case Cvi::auprc: raw = get_pr(); break;
                    case Cvi::auiprc: raw = get_ipr(); break;
                    case Cvi::sauprc: raw = 0.5 * (get_pr() + get_ipr()); break;
                    case Cvi::c_index:
                        raw = c_index(distances, entry.partition, &prefix);
                        break;
                    default:
                        raw = compute_index(index_descriptor(id), data, distances, entry.partition);
                        break;
                }
                if (mode == ScoreMode::oriented && direction(id) == Direction::minimize) {
                    raw = -raw;
                }
                rec.scores[j] = raw;
            } catch (const degenerate_error&) {
                rec.scores[j] = std::nullopt;
            }
        }

        try {
            rec.ari = adjusted_rand_index(entry.partition, *data.ground_truth());
        } catch (const degenerate_error&) {
            rec.ari = std::nullopt;
        }
        eval.records.push_back(std::move(rec));
    }
    return eval;
}

/// Pearson correlation between each CVI's scores and ARI across the
/// dataset's partitions. Cells with fewer than 3 defined (score, ari)
/// pairs, or zero variance, come back empty.
inline std::vector<std::optional<double>> correlate_per_dataset(const DatasetEvaluation& eval) {
    std::vector<std::optional<double>> out(eval.cvis.size());
    for (std::size_t j = 0; j < eval.cvis.size(); ++j) {
        std::vector<double> xs, ys;
        for (const EvaluationRecord& rec : eval.records) {
            if (rec.scores[j] && rec.ari) {
                xs.push_back(*rec.scores[j]);
                ys.push_back(*rec.ari);
            }
        }
        if (xs.size() < 3) continue;
        try {
            out[j] = pearson_correlation(xs, ys);
        } catch (const degenerate_error&) {
        }
    }
    return out;
}

/// Datasets-by-CVIs correlation matrix with dataset metadata.
struct CorrelationTable {
    std::vector<Cvi> cvis;
    std::vector<std::string> dataset_ids;
    std::vector<int> imbalance_pct;
    std::vector<std::vector<std::optional<double>>> values;  // [dataset][cvi]

    std::size_t n_datasets() const { return dataset_ids.size(); }
};

inline CorrelationTable correlation_table(const std::vector<DatasetEvaluation>& evals) {
    if (evals.empty()) throw data_error("no dataset evaluations to correlate");
    CorrelationTable table;
    table.cvis = evals.front().cvis;
    for (const DatasetEvaluation& eval : evals) {
        if (eval.cvis != table.cvis) {
            throw data_error("dataset evaluations disagree on the index list");
        }
        table.dataset_ids.push_back(eval.dataset_id);
        table.imbalance_pct.push_back(eval.imbalance_pct);
        table.values.push_back(correlate_per_dataset(eval));
    }
    return table;
}

/// Rows of the matrix that have every cell defined, densified; second
/// member lists the surviving row indices.
inline std::pair<std::vector<std::vector<double>>, std::vector<std::size_t>>
filter_complete_rows(const std::vector<std::vector<std::optional<double>>>& matrix) {
    std::vector<std::vector<double>> dense;
    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        std::vector<double> row;
        row.reserve(matrix[r].size());
        bool complete = true;
        for (const auto& cell : matrix[r]) {
            if (!cell) {
                complete = false;
                break;
            }
            row.push_back(*cell);
        }
        if (complete) {
            dense.push_back(std::move(row));
            kept.push_back(r);
        }
    }
    return {std::move(dense), std::move(kept)};
}

struct RankAnalysis {
    FriedmanResult friedman;
    double critical_difference = 0.0;
    double alpha = 0.05;
};

inline RankAnalysis friedman_nemenyi(const std::vector<std::vector<double>>& matrix, double alpha) {
    RankAnalysis analysis;
    analysis.friedman = friedman_test(matrix);
    analysis.critical_difference =
        nemenyi_critical_difference(analysis.friedman.n_methods, analysis.friedman.n_blocks, alpha);
    analysis.alpha = alpha;
    return analysis;
}

inline RankAnalysis friedman_nemenyi(const std::vector<std::vector<std::optional<double>>>& matrix,
                                     double alpha) {
    for (const auto& row : matrix) {
        for (const auto& cell : row) {
            if (!cell) {
                throw data_error(
                    "correlation matrix has missing cells; reduce it to complete rows "
                    "(filter_complete_rows) before ranking");
            }
        }
    }
    auto [dense, kept] = filter_complete_rows(matrix);
    (void)kept;
    return friedman_nemenyi(dense, alpha);
}

struct BenchmarkReport {
    std::vector<Cvi> cvis;
    CorrelationTable correlations;
    std::vector<std::optional<double>> mean_correlation;
    std::vector<std::optional<double>> median_correlation;
    std::vector<std::optional<double>> mean_rank;
    std::optional<double> friedman_statistic;
    std::optional<double> friedman_p_value;
    std::optional<double> nemenyi_cd;
    double alpha = 0.05;
    std::size_t n_datasets_ranked = 0;
    ScoreMode mode = ScoreMode::oriented;
    std::uint64_t seed = 0;
    // per CVI, the indices of CVIs it outranks by more than the critical
    // difference; empty when ranking was impossible
    std::vector<std::vector<std::size_t>> better_than;
};

inline BenchmarkReport build_report(const std::vector<DatasetEvaluation>& evals, double alpha,
                                    ScoreMode mode, std::uint64_t seed) {
    BenchmarkReport report;
    report.correlations = correlation_table(evals);
    report.cvis = report.correlations.cvis;
    report.alpha = alpha;
    report.mode = mode;
    report.seed = seed;

    std::size_t c = report.cvis.size();
    report.mean_correlation.resize(c);
    report.median_correlation.resize(c);
    report.mean_rank.resize(c);
    report.better_than.resize(c);
    for (std::size_t j = 0; j < c; ++j) {
        std::vector<double> cells;
        for (const auto& row : report.correlations.values) {
            if (row[j]) cells.push_back(*row[j]);
        }
        if (!cells.empty()) {
            report.mean_correlation[j] = mean(cells);
            report.median_correlation[j] = median(cells);
        }
    }

    auto [dense, kept] = filter_complete_rows(report.correlations.values);
    report.n_datasets_ranked = dense.size();
    if (dense.size() >= 2 && c >= 2) {
        RankAnalysis analysis = friedman_nemenyi(dense, alpha);
        report.friedman_statistic = analysis.friedman.statistic;
        report.friedman_p_value = analysis.friedman.p_value;
        report.nemenyi_cd = analysis.critical_difference;
        for (std::size_t j = 0; j < c; ++j) report.mean_rank[j] = analysis.friedman.mean_ranks[j];
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                if (i != j && *report.mean_rank[j] - *report.mean_rank[i] >
                                  analysis.critical_difference) {
                    report.better_than[i].push_back(j);
                }
            }
        }
    }
    return report;
}

inline std::string stratum_label(int pct) {
    return pct == 0 ? "Bal." : std::to_string(pct) + "%";
}

/// Per-CVI correlation spread within one imbalance stratum.
struct StratumSummary {
    int imbalance_pct = 0;
    std::string label;
    std::vector<std::size_t> count;
    std::vector<std::optional<FiveNumber>> spread;
    std::vector<std::optional<double>> mean_value;
};

/// Groups the correlation rows by imbalance percentage. With an explicit
/// strata list, every dataset must fall in one of the requested strata;
/// by default the strata are the distinct percentages present.
inline std::vector<StratumSummary> stratify_by_imbalance(const CorrelationTable& table,
                                                         std::vector<int> strata = {}) {
    for (std::size_t r = 0; r < table.n_datasets(); ++r) {
        if (table.imbalance_pct[r] < 0) {
            throw data_error("dataset '" + table.dataset_ids[r] +
                             "' carries no imbalance metadata; cannot stratify");
        }
    }
    if (strata.empty()) {
        strata = table.imbalance_pct;
        std::sort(strata.begin(), strata.end());
        strata.erase(std::unique(strata.begin(), strata.end()), strata.end());
    } else {
        for (std::size_t r = 0; r < table.n_datasets(); ++r) {
            if (std::find(strata.begin(), strata.end(), table.imbalance_pct[r]) == strata.end()) {
                throw data_error("dataset '" + table.dataset_ids[r] + "' falls in unknown stratum " +
                                 std::to_string(table.imbalance_pct[r]));
            }
        }
    }

    std::vector<StratumSummary> out;
    out.reserve(strata.size());
    std::size_t c = table.cvis.size();
    for (int pct : strata) {
        StratumSummary s;
        s.imbalance_pct = pct;
        s.label = stratum_label(pct);
        s.count.assign(c, 0);
        s.spread.resize(c);
        s.mean_value.resize(c);
        for (std::size_t j = 0; j < c; ++j) {
            std::vector<double> cells;
            for (std::size_t r = 0; r < table.n_datasets(); ++r) {
                if (table.imbalance_pct[r] == pct && table.values[r][j]) {
                    cells.push_back(*table.values[r][j]);
                }
            }
            s.count[j] = cells.size();
            if (!cells.empty()) {
                s.spread[j] = five_number_summary(cells);
                s.mean_value[j] = mean(cells);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// One pseudo-stratum spanning every dataset, for unstratified summaries.
inline StratumSummary summarize_all(const CorrelationTable& table) {
    StratumSummary s;
    s.imbalance_pct = -1;
    s.label = "All";
    std::size_t c = table.cvis.size();
    s.count.assign(c, 0);
    s.spread.resize(c);
    s.mean_value.resize(c);
    for (std::size_t j = 0; j < c; ++j) {
        std::vector<double> cells;
        for (const auto& row : table.values) {
            if (row[j]) cells.push_back(*row[j]);
        }
        s.count[j] = cells.size();
        if (!cells.empty()) {
            s.spread[j] = five_number_summary(cells);
            s.mean_value[j] = mean(cells);
        }
    }
    return s;
}

namespace detail {

inline std::string cell(const std::optional<double>& v) {
    return v ? format_score(*v) : std::string();
}

// report.csv is re-read by the figure renderer, so keep it lossless
inline std::string cell_full(const std::optional<double>& v) {
    return v ? format_full(*v) : std::string();
}

}  // namespace detail

inline void write_records_csv(std::ostream& out, const std::vector<DatasetEvaluation>& evals) {
    if (evals.empty()) throw data_error("no evaluations to write");
    out << "dataset_id,algorithm,k";
    for (Cvi id : evals.front().cvis) out << ',' << to_string(id);
    out << ",ari\n";
    for (const DatasetEvaluation& eval : evals) {
        for (const EvaluationRecord& rec : eval.records) {
            out << eval.dataset_id << ',' << rec.algorithm << ',' << rec.k;
            for (const auto& s : rec.scores) out << ',' << detail::cell(s);
            out << ',' << detail::cell(rec.ari) << '\n';
        }
    }
}

inline void write_correlations_csv(std::ostream& out, const CorrelationTable& table) {
    out << "dataset_id,imbalance_pct";
    for (Cvi id : table.cvis) out << ',' << to_string(id);
    out << '\n';
    for (std::size_t r = 0; r < table.n_datasets(); ++r) {
        out << table.dataset_ids[r] << ',';
        if (table.imbalance_pct[r] >= 0) out << table.imbalance_pct[r];
        for (const auto& v : table.values[r]) out << ',' << detail::cell(v);
        out << '\n';
    }
}

inline CorrelationTable read_correlations_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::read_line(in, line, line_no)) {
        throw data_error(source + ": empty correlations file");
    }
    auto header = detail::split_csv(line);
    if (header.size() < 3 || header[0] != "dataset_id" || header[1] != "imbalance_pct") {
        throw data_error(detail::at(source, line_no) +
                         "expected header dataset_id,imbalance_pct,<index...>");
    }
    CorrelationTable table;
    for (std::size_t c = 2; c < header.size(); ++c) {
        try {
            table.cvis.push_back(parse_cvi(header[c]));
        } catch (const usage_error& e) {
            throw data_error(detail::at(source, line_no) + e.what());
        }
    }
    while (detail::read_line(in, line, line_no)) {
        auto fields = detail::split_csv(line);
        if (fields.size() != header.size()) {
            throw data_error(detail::at(source, line_no) + "expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        table.dataset_ids.push_back(fields[0]);
        table.imbalance_pct.push_back(
            fields[1].empty()
                ? -1
                : static_cast<int>(detail::parse_integer(fields[1], source, line_no, header[1])));
        std::vector<std::optional<double>> row;
        for (std::size_t c = 2; c < fields.size(); ++c) {
            if (fields[c].empty()) row.emplace_back();
            else row.emplace_back(detail::parse_number(fields[c], source, line_no, header[c]));
        }
        table.values.push_back(std::move(row));
    }
    return table;
}

inline void write_report_csv(std::ostream& out, const BenchmarkReport& report) {
    out << "cvi,mean_correlation,median_correlation,mean_rank,friedman_statistic,"
           "friedman_p_value,nemenyi_cd,alpha,n_datasets_ranked,score_mode,seed,"
           "significantly_better_than\n";
    for (std::size_t j = 0; j < report.cvis.size(); ++j) {
        out << to_string(report.cvis[j]) << ',' << detail::cell_full(report.mean_correlation[j])
            << ',' << detail::cell_full(report.median_correlation[j]) << ','
            << detail::cell_full(report.mean_rank[j]) << ','
            << detail::cell_full(report.friedman_statistic) << ','
            << detail::cell_full(report.friedman_p_value) << ','
            << detail::cell_full(report.nemenyi_cd) << ',' << format_score(report.alpha) << ','
            << report.n_datasets_ranked << ',' << to_string(report.mode) << ',' << report.seed
            << ',';
        for (std::size_t t = 0; t < report.better_than[j].size(); ++t) {
            if (t) out << ';';
            out << to_string(report.cvis[report.better_than[j][t]]);
        }
        out << '\n';
    }
}

/// The slice of report.csv the figure renderer needs.
struct ReportSummary {
    std::vector<Cvi> cvis;
    std::vector<std::optional<double>> mean_rank;
    std::optional<double> friedman_p_value;
    std::optional<double> nemenyi_cd;
};

inline ReportSummary read_report_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::read_line(in, line, line_no)) {
        throw data_error(source + ": empty report file");
    }
    auto header = detail::split_csv(line);
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw data_error(detail::at(source, line_no) + "missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t col_cvi = column("cvi");
    std::size_t col_rank = column("mean_rank");
    std::size_t col_p = column("friedman_p_value");
    std::size_t col_cd = column("nemenyi_cd");

    ReportSummary summary;
    while (detail::read_line(in, line, line_no)) {
        auto fields = detail::split_csv(line);
        if (fields.size() != header.size()) {
            throw data_error(detail::at(source, line_no) + "expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        try {
            summary.cvis.push_back(parse_cvi(fields[col_cvi]));
        } catch (const usage_error& e) {
            throw data_error(detail::at(source, line_no) + e.what());
        }
        summary.mean_rank.emplace_back();
        if (!fields[col_rank].empty()) {
            summary.mean_rank.back() =
                detail::parse_number(fields[col_rank], source, line_no, "mean_rank");
        }
        if (!fields[col_p].empty()) {
            summary.friedman_p_value =
                detail::parse_number(fields[col_p], source, line_no, "friedman_p_value");
        }
        if (!fields[col_cd].empty()) {
            summary.nemenyi_cd =
                detail::parse_number(fields[col_cd], source, line_no, "nemenyi_cd");
        }
    }
    if (summary.cvis.empty()) throw data_error(source + ": report has no index rows");
    return summary;
}

inline void write_strata_csv(std::ostream& out, const std::vector<StratumSummary>& strata,
                             const std::vector<Cvi>& cvis) {
    out << "stratum,imbalance_pct,cvi,count,min,q1,median,q3,max,mean\n";
    for (const StratumSummary& s : strata) {
        for (std::size_t j = 0; j < cvis.size(); ++j) {
            out << s.label << ',' << s.imbalance_pct << ',' << to_string(cvis[j]) << ','
                << s.count[j] << ',';
            if (s.spread[j]) {
                const FiveNumber& f = *s.spread[j];
                out << format_score(f.min) << ',' << format_score(f.q1) << ','
                    << format_score(f.median) << ',' << format_score(f.q3) << ','
                    << format_score(f.max);
            } else {
                out << ",,,,";
            }
            out << ',' << detail::cell(s.mean_value[j]) << '\n';
        }
    }
}

}  // namespace clustval
