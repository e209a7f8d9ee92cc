#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

namespace clustval {

/// Pairs argsorted by similarity descending, with tie groups delimited.
/// The ranking depends only on the similarities, so it can be built once
/// per dataset and reused across every partition scored against it.
struct PairRanking {
    std::vector<std::size_t> order;       // pair indices, similarity descending
    std::vector<std::size_t> group_end;   // exclusive end of each tie group in `order`
    std::vector<double> thresholds;       // distinct similarity values, descending

    static PairRanking from_similarities(const CondensedPairVector& s) {
        PairRanking r;
        r.order.resize(s.size());
        std::iota(r.order.begin(), r.order.end(), std::size_t{0});
        std::sort(r.order.begin(), r.order.end(), [&s](std::size_t a, std::size_t b) {
            if (s[a] != s[b]) return s[a] > s[b];
            return a < b;
        });
        std::size_t p = 0;
        while (p < r.order.size()) {
            double v = s[r.order[p]];
            std::size_t q = p;
            while (q < r.order.size() && s[r.order[q]] == v) ++q;
            r.thresholds.push_back(v);
            r.group_end.push_back(q);
            p = q;
        }
        return r;
    }

    std::size_t groups() const { return thresholds.size(); }
};

/// One confusion matrix per numerically distinct similarity value.
/// Row t holds cumulative counts with tie groups 1..t predicted positive;
/// tie groups always enter the positive set atomically.
struct SweepTable {
    std::vector<double> thresholds;        // strictly decreasing
    std::vector<ConfusionCounts> counts;   // aligned with thresholds
    std::uint64_t positives = 0;           // within-cluster pairs
    std::uint64_t negatives = 0;           // between-cluster pairs

    std::size_t rows() const { return thresholds.size(); }
};

/// Builds the threshold sweep for co-membership flags `co` against a
/// precomputed similarity ranking. O(P) given the ranking.
inline SweepTable confusion_sweep(const PairRanking& ranking, const CondensedPairVector& co) {
    if (ranking.order.size() != co.size()) {
        throw data_error("similarity and co-membership vectors differ in length");
    }
    std::uint64_t positives = 0;
    for (std::size_t p = 0; p < co.size(); ++p) {
        if (co[p] > 0.5) ++positives;
    }
    std::uint64_t negatives = co.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw degenerate_error("degenerate labels: co-membership must contain both classes");
    }

    SweepTable table;
    table.positives = positives;
    table.negatives = negatives;
    table.thresholds = ranking.thresholds;
    table.counts.reserve(ranking.groups());

    std::uint64_t tp = 0, fp = 0;
    std::size_t begin = 0;
    for (std::size_t g = 0; g < ranking.groups(); ++g) {
        std::size_t end = ranking.group_end[g];
        for (std::size_t t = begin; t < end; ++t) {
            if (co[ranking.order[t]] > 0.5) ++tp; else ++fp;
        }
        table.counts.push_back({tp, fp, positives - tp, negatives - fp});
        begin = end;
    }
    return table;
}

inline SweepTable confusion_sweep(const CondensedPairVector& s, const CondensedPairVector& co) {
    return confusion_sweep(PairRanking::from_similarities(s), co);
}

/// Area under the ROC curve (TPR = TP/(TP+FN) vs FPR = FP/(FP+TN)),
/// anchored at (0,0) and (1,1), trapezoid rule over tie-group endpoints.
/// The accumulation is integer-exact: the result equals the rank statistic
/// [#(within sim > between sim) + #ties/2] / (P+ * P-).
inline double aucc(const SweepTable& table) {
    std::uint64_t twice_wins_plus_ties = 0;  // sum of neg_g * (tp_before + tp_after)
    std::uint64_t prev_tp = 0, prev_fp = 0;
    for (const auto& c : table.counts) {
        twice_wins_plus_ties += (c.fp - prev_fp) * (prev_tp + c.tp);
        prev_tp = c.tp;
        prev_fp = c.fp;
    }
    return static_cast<double>(twice_wins_plus_ties) /
           (2.0 * static_cast<double>(table.positives) * static_cast<double>(table.negatives));
}

namespace detail {

/// Trapezoid integral over an (x, y) point sequence with non-decreasing x.
inline double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    double area = 0.0;
    for (std::size_t t = 1; t < xs.size(); ++t) {
        area += (xs[t] - xs[t - 1]) * (ys[t] + ys[t - 1]) * 0.5;
    }
    return area;
}

}  // namespace detail

/// Area under the precision-recall curve. Recall = TP/(TP+FN),
/// Precision = TP/(TP+FP), one point per sweep row plus an anchor at
/// recall 0 replicating the first row's precision (0 when that row has
/// tp = 0). Zero-width segments between equal-recall rows contribute
/// nothing.
inline double auprc(const SweepTable& table) {
    std::vector<double> xs, ys;
    xs.reserve(table.rows() + 1);
    ys.reserve(table.rows() + 1);
    xs.push_back(0.0);
    ys.push_back(0.0);  // replaced once the first row is known
    for (const auto& c : table.counts) {
        xs.push_back(static_cast<double>(c.tp) / static_cast<double>(table.positives));
        ys.push_back(static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp));
    }
    ys[0] = table.counts.front().tp > 0 ? ys[1] : 0.0;
    return detail::trapezoid(xs, ys);
}

/// Area under the inverse precision-recall curve: Inverse Recall =
/// TN/(TN+FP) against Inverse Precision = TN/(TN+FN), sweeping thresholds
/// ascending so the predicted-negative set grows one tie group at a time.
/// Same anchor and trapezoid rule as auprc; satisfies
/// auiprc(s, c) == auprc(-s, 1-c) exactly.
inline double auiprc(const SweepTable& table) {
    std::vector<double> xs, ys;
    xs.reserve(table.rows() + 1);
    ys.reserve(table.rows() + 1);
    xs.push_back(0.0);
    ys.push_back(0.0);
    // Ascending thresholds reuse the descending cumulative rows: with the
    // last r tie groups predicted negative, the forward row T-r (empty at
    // r = T) supplies tn = P- - fp and fn = P+ - tp.
    std::uint64_t first_tn = 0;
    for (std::size_t r = 1; r <= table.rows(); ++r) {
        std::size_t t = table.rows() - r;
        std::uint64_t tp = t == 0 ? 0 : table.counts[t - 1].tp;
        std::uint64_t fp = t == 0 ? 0 : table.counts[t - 1].fp;
        std::uint64_t tn = table.negatives - fp;
        std::uint64_t fn = table.positives - tp;
        if (r == 1) first_tn = tn;
        xs.push_back(static_cast<double>(tn) / static_cast<double>(table.negatives));
        ys.push_back(static_cast<double>(tn) / static_cast<double>(tn + fn));
    }
    ys[0] = first_tn > 0 ? ys[1] : 0.0;
    return detail::trapezoid(xs, ys);
}

/// Arithmetic mean of auprc and auiprc.
inline double sauprc(const SweepTable& table) {
    return 0.5 * (auprc(table) + auiprc(table));
}

inline double aucc(const CondensedPairVector& s, const CondensedPairVector& co) {
    return aucc(confusion_sweep(s, co));
}
inline double auprc(const CondensedPairVector& s, const CondensedPairVector& co) {
    return auprc(confusion_sweep(s, co));
}
inline double auiprc(const CondensedPairVector& s, const CondensedPairVector& co) {
    return auiprc(confusion_sweep(s, co));
}
inline double sauprc(const CondensedPairVector& s, const CondensedPairVector& co) {
    return sauprc(confusion_sweep(s, co));
}

/// Baker-Hubert Gamma: concordance minus discordance over all
/// (within-pair distance, between-pair distance) comparisons, divided by
/// their sum. Quadratic in the pair count; kept as a verification oracle
/// for aucc = (gamma + 1) / 2.
inline double gamma_baker_hubert(const CondensedPairVector& d, const CondensedPairVector& co) {
    if (d.size() != co.size()) {
        throw data_error("distance and co-membership vectors differ in length");
    }
    std::vector<double> within, between;
    for (std::size_t p = 0; p < d.size(); ++p) {
        (co[p] > 0.5 ? within : between).push_back(d[p]);
    }
    if (within.empty() || between.empty()) {
        throw degenerate_error("degenerate labels: co-membership must contain both classes");
    }
    std::uint64_t concordant = 0, discordant = 0;
    for (double w : within) {
        for (double b : between) {
            if (w < b) ++concordant;
            else if (w > b) ++discordant;
        }
    }
    if (concordant + discordant == 0) {
        throw degenerate_error("gamma undefined: every within/between comparison is tied");
    }
    return (static_cast<double>(concordant) - static_cast<double>(discordant)) /
           (static_cast<double>(concordant) + static_cast<double>(discordant));
}

enum class CurveKind { roc, pr, inverse_pr };

inline std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::roc: return "roc";
        case CurveKind::pr: return "pr";
        case CurveKind::inverse_pr: return "inverse_pr";
    }
    return "?";
}

struct CurvePoint {
    std::optional<double> threshold;  // absent on anchor points
    ConfusionCounts counts;
    double x = 0.0;
    double y = 0.0;
};

struct Curve {
    CurveKind kind = CurveKind::roc;
    std::vector<CurvePoint> points;
};

/// Materializes the swept curve of the requested kind, anchors included.
inline Curve extract_curve(const SweepTable& table, CurveKind kind) {
    Curve curve;
    curve.kind = kind;
    auto P = table.positives;
    auto N = table.negatives;
    auto dbl = [](std::uint64_t v) { return static_cast<double>(v); };

    if (kind == CurveKind::roc) {
        curve.points.push_back({std::nullopt, {0, 0, P, N}, 0.0, 0.0});
        for (std::size_t t = 0; t < table.rows(); ++t) {
            const auto& c = table.counts[t];
            curve.points.push_back({table.thresholds[t], c, dbl(c.fp) / dbl(N), dbl(c.tp) / dbl(P)});
        }
        curve.points.push_back({std::nullopt, {P, N, 0, 0}, 1.0, 1.0});
    } else if (kind == CurveKind::pr) {
        for (std::size_t t = 0; t < table.rows(); ++t) {
            const auto& c = table.counts[t];
            curve.points.push_back(
                {table.thresholds[t], c, dbl(c.tp) / dbl(P), dbl(c.tp) / dbl(c.tp + c.fp)});
        }
        double anchor_y = table.counts.front().tp > 0 ? curve.points.front().y : 0.0;
        curve.points.insert(curve.points.begin(), {std::nullopt, {0, 0, P, N}, 0.0, anchor_y});
    } else {
        for (std::size_t r = 1; r <= table.rows(); ++r) {
            std::size_t t = table.rows() - r;
            ConfusionCounts fwd = t == 0 ? ConfusionCounts{0, 0, P, N} : table.counts[t - 1];
            // threshold of the smallest-similarity group entering the negative set
            double threshold = table.thresholds[t];
            curve.points.push_back({threshold, fwd, dbl(fwd.tn) / dbl(N),
                                    dbl(fwd.tn) / dbl(fwd.tn + fwd.fn)});
        }
        double anchor_y = curve.points.front().counts.tn > 0 ? curve.points.front().y : 0.0;
        curve.points.insert(curve.points.begin(), {std::nullopt, {P, N, 0, 0}, 0.0, anchor_y});
    }
    return curve;
}

}  // namespace clustval
