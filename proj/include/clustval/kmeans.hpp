#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

namespace clustval {

struct KMeansConfig {
    int restarts = 10;
    int max_iterations = 300;
    double tolerance = 1e-6;  // relative inertia decrease
};

struct KMeansResult {
    std::vector<int> labels;
    int k = 0;
    double inertia = 0.0;
    int iterations = 0;
    std::vector<double> inertia_trace;  // inertia after each assignment step
    std::vector<double> centroids;

    Partition partition() const { return Partition(labels, k); }
};

namespace detail {

inline double sq_distance(std::span<const double> a, const double* b, std::size_t m) {
    double acc = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        double dv = a[t] - b[t];
        acc += dv * dv;
    }
    return acc;
}

inline std::vector<double> kmeanspp_init(const Dataset& data, std::size_t k, std::mt19937_64& rng) {
    std::size_t n = data.size();
    std::size_t m = data.dim();
    std::vector<double> centers;
    centers.reserve(k * m);
    std::vector<bool> chosen(n, false);
    std::uniform_int_distribution<std::size_t> uniform_idx(0, n - 1);
    std::size_t first = uniform_idx(rng);
    chosen[first] = true;
    auto r0 = data.row(first);
    centers.insert(centers.end(), r0.begin(), r0.end());

    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = sq_distance(data.row(i), centers.data(), m);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += dist2[i];
        std::size_t pick = n;  // sentinel
        if (total > 0.0) {
            double r = unit(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = n - 1;  // guard against rounding at the top end
        }
        if (pick == n || chosen[pick]) {
            // all remaining mass on duplicates: take the first unchosen point
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        chosen[pick] = true;
        auto row = data.row(pick);
        centers.insert(centers.end(), row.begin(), row.end());
        const double* newest = centers.data() + c * m;
        for (std::size_t i = 0; i < n; ++i) {
            dist2[i] = std::min(dist2[i], sq_distance(data.row(i), newest, m));
        }
    }
    return centers;
}

}  // namespace detail

/// One Lloyd run from a k-means++ initialization. Ties in assignment go to
/// the lowest centroid index; an emptied cluster is repaired by promoting
/// the point farthest from its centroid to a singleton center.
inline KMeansResult kmeans_single_run(const Dataset& data, int k, std::uint64_t seed,
                                      const KMeansConfig& cfg = {}) {
    std::size_t n = data.size();
    std::size_t m = data.dim();
    if (k < 2 || static_cast<std::size_t>(k) > n - 1) {
        throw data_error("k-means requires 2 <= k <= n-1 (got k=" + std::to_string(k) + ")");
    }
    std::size_t kk = static_cast<std::size_t>(k);
    std::mt19937_64 rng(seed);

    KMeansResult result;
    result.k = k;
    result.centroids = detail::kmeanspp_init(data, kk, rng);
    result.labels.assign(n, 0);
    std::vector<std::size_t> sizes(kk, 0);
    std::vector<double> point_cost(n, 0.0);

    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        // assignment
        bool changed = false;
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = data.row(i);
            int best = 0;
            double best_d = detail::sq_distance(row, result.centroids.data(), m);
            for (std::size_t c = 1; c < kk; ++c) {
                double dv = detail::sq_distance(row, result.centroids.data() + c * m, m);
                if (dv < best_d) {
                    best_d = dv;
                    best = static_cast<int>(c);
                }
            }
            if (result.labels[i] != best) changed = true;
            result.labels[i] = best;
            point_cost[i] = best_d;
            ++sizes[static_cast<std::size_t>(best)];
        }

        // repair empty clusters before measuring inertia
        for (std::size_t c = 0; c < kk; ++c) {
            if (sizes[c] != 0) continue;
            std::size_t farthest = n;
            double worst = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[static_cast<std::size_t>(result.labels[i])] <= 1) continue;
                if (point_cost[i] > worst) {
                    worst = point_cost[i];
                    farthest = i;
                }
            }
            --sizes[static_cast<std::size_t>(result.labels[farthest])];
            result.labels[farthest] = static_cast<int>(c);
            sizes[c] = 1;
            auto row = data.row(farthest);
            std::copy(row.begin(), row.end(), result.centroids.begin() + c * m);
            point_cost[farthest] = 0.0;
            changed = true;
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) inertia += point_cost[i];
        result.inertia_trace.push_back(inertia);
        result.inertia = inertia;
        result.iterations = iter + 1;

        bool converged = !changed || (std::isfinite(prev_inertia) &&
                                      prev_inertia - inertia <= cfg.tolerance * prev_inertia);
        if (converged) break;
        prev_inertia = inertia;

        // centroid update
        std::fill(result.centroids.begin(), result.centroids.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = data.row(i);
            std::size_t c = static_cast<std::size_t>(result.labels[i]);
            for (std::size_t t = 0; t < m; ++t) result.centroids[c * m + t] += row[t];
        }
        for (std::size_t c = 0; c < kk; ++c) {
            for (std::size_t t = 0; t < m; ++t) {
                result.centroids[c * m + t] /= static_cast<double>(sizes[c]);
            }
        }
    }
    return result;
}

/// Best-inertia result over `cfg.restarts` independent runs, deterministic
/// given (seed, restarts).
inline KMeansResult kmeans_detailed(const Dataset& data, int k, std::uint64_t seed,
                                    const KMeansConfig& cfg = {}) {
    if (cfg.restarts < 1) throw data_error("k-means needs at least one restart");
    KMeansResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
        KMeansResult run = kmeans_single_run(data, k, mix_seed(seed, static_cast<std::uint64_t>(r)), cfg);
        if (r == 0 || run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

inline Partition kmeans(const Dataset& data, int k, std::uint64_t seed, int restarts = 10) {
    KMeansConfig cfg;
    cfg.restarts = restarts;
    return kmeans_detailed(data, k, seed, cfg).partition();
}

}  // namespace clustval
