#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "clustval/errors.hpp"

namespace clustval {

/// Ranks within one row, rank 1 for the largest value; tied values share
/// the average of the ranks they span.
inline std::vector<double> average_ranks(const std::vector<double>& row) {
    std::size_t c = row.size();
    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&row](std::size_t a, std::size_t b) {
        if (row[a] != row[b]) return row[a] > row[b];
        return a < b;
    });
    std::vector<double> ranks(c, 0.0);
    std::size_t i = 0;
    while (i < c) {
        std::size_t j = i;
        while (j < c && row[idx[j]] == row[idx[i]]) ++j;
        double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[idx[t]] = shared;
        i = j;
    }
    return ranks;
}

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> mean_ranks;  // one per method (column)
    std::size_t n_blocks = 0;        // rows that were ranked
    std::size_t n_methods = 0;
};

/// Friedman chi-square over a complete blocks-by-methods score matrix,
/// higher score = better (rank 1). Uses the mean-rank form
/// 12N/(c(c+1)) * [sum R_j^2 - c(c+1)^2/4].
inline FriedmanResult friedman_test(const std::vector<std::vector<double>>& matrix) {
    if (matrix.size() < 2) {
        throw data_error("friedman test needs at least 2 blocks (got " +
                         std::to_string(matrix.size()) + ")");
    }
    std::size_t c = matrix.front().size();
    if (c < 2) throw data_error("friedman test needs at least 2 methods");
    for (const auto& row : matrix) {
        if (row.size() != c) throw data_error("friedman matrix is ragged");
    }
    double nd = static_cast<double>(matrix.size());
    double cd = static_cast<double>(c);

    FriedmanResult result;
    result.n_blocks = matrix.size();
    result.n_methods = c;
    result.mean_ranks.assign(c, 0.0);
    for (const auto& row : matrix) {
        auto ranks = average_ranks(row);
        for (std::size_t j = 0; j < c; ++j) result.mean_ranks[j] += ranks[j];
    }
    for (double& r : result.mean_ranks) r /= nd;

    double sum_sq = 0.0;
    for (double r : result.mean_ranks) sum_sq += r * r;
    double stat = 12.0 * nd / (cd * (cd + 1.0)) * (sum_sq - cd * (cd + 1.0) * (cd + 1.0) / 4.0);
    result.statistic = std::max(stat, 0.0);

    boost::math::chi_squared dist(cd - 1.0);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    return result;
}

namespace detail {

// Two-sided studentized-range quantiles at infinite degrees of freedom,
// divided by sqrt(2); indexed by method count c = 2..20.
inline const double* rank_test_constants(double alpha) {
    static const double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                                 3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                 3.426, 3.458, 3.489, 3.517, 3.544};
    static const double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                                 2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                 3.196, 3.230, 3.261, 3.291, 3.319};
    if (alpha == 0.05) return q05;
    if (alpha == 0.10) return q10;
    throw usage_error("critical-difference constants available only for alpha 0.05 and 0.10");
}

}  // namespace detail

/// Nemenyi critical difference q_alpha * sqrt(c(c+1)/(6N)) for c methods
/// compared over N blocks. Mean-rank gaps above this are significant.
inline double nemenyi_critical_difference(std::size_t c, std::size_t n_blocks, double alpha) {
    if (c < 2 || c > 20) {
        throw data_error("critical difference tabulated for 2..20 methods (got " +
                         std::to_string(c) + ")");
    }
    if (n_blocks < 1) throw data_error("critical difference needs at least one block");
    double q = detail::rank_test_constants(alpha)[c - 2];
    double cd = static_cast<double>(c);
    return q * std::sqrt(cd * (cd + 1.0) / (6.0 * static_cast<double>(n_blocks)));
}

/// Linear-interpolation quantile (the common "type 7" rule) of sorted data.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw data_error("quantile of empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    double h = static_cast<double>(sorted.size() - 1) * p;
    std::size_t lo = static_cast<std::size_t>(h);
    double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

struct FiveNumber {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

inline FiveNumber five_number_summary(std::vector<double> values) {
    if (values.empty()) throw data_error("summary of empty sample");
    std::sort(values.begin(), values.end());
    FiveNumber f;
    f.min = values.front();
    f.q1 = quantile_sorted(values, 0.25);
    f.median = quantile_sorted(values, 0.5);
    f.q3 = quantile_sorted(values, 0.75);
    f.max = values.back();
    return f;
}

inline double mean(const std::vector<double>& values) {
    if (values.empty()) throw data_error("mean of empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw data_error("median of empty sample");
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, 0.5);
}

}  // namespace clustval
