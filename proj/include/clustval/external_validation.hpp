#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

namespace clustval {

/// Adjusted Rand Index between two partitions of the same objects.
/// Contingency counts are accumulated in integers (128-bit for the
/// expected-index product) so counts up to n ~ 1e5 do not overflow.
inline double adjusted_rand_index(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) {
        throw data_error("partitions cover different object counts");
    }
    std::size_t n = a.size();
    std::size_t ka = static_cast<std::size_t>(a.k());
    std::size_t kb = static_cast<std::size_t>(b.k());
    std::vector<std::uint64_t> table(ka * kb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++table[static_cast<std::size_t>(a.label(i)) * kb + static_cast<std::size_t>(b.label(i))];
    }
    auto choose2 = [](std::uint64_t v) { return v * (v - 1) / 2; };
    std::uint64_t sum_cells = 0;
    for (std::uint64_t v : table) sum_cells += choose2(v);
    std::uint64_t sum_rows = 0, sum_cols = 0;
    for (std::size_t r = 0; r < ka; ++r) {
        std::uint64_t row = 0;
        for (std::size_t c = 0; c < kb; ++c) row += table[r * kb + c];
        sum_rows += choose2(row);
    }
    for (std::size_t c = 0; c < kb; ++c) {
        std::uint64_t col = 0;
        for (std::size_t r = 0; r < ka; ++r) col += table[r * kb + c];
        sum_cols += choose2(col);
    }
    std::uint64_t all_pairs = choose2(n);
    double expected = static_cast<double>(static_cast<unsigned __int128>(sum_rows) * sum_cols) /
                      static_cast<double>(all_pairs);
    double max_index = 0.5 * (static_cast<double>(sum_rows) + static_cast<double>(sum_cols));
    if (max_index == expected) {
        throw degenerate_error("ari undefined: degenerate agreement scale");
    }
    return (static_cast<double>(sum_cells) - expected) / (max_index - expected);
}

/// Pearson product-moment correlation. Requires length >= 3 and
/// non-degenerate variance in both arguments.
inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw data_error("correlation inputs differ in length");
    if (x.size() < 3) throw data_error("correlation requires at least 3 observations");
    std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw degenerate_error("correlation undefined: zero variance");
    }
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

inline double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson_correlation(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace clustval
