#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

namespace clustval {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool valid() const { return lo <= hi; }
};

/// Parameters for the 2-D Gaussian mixture generator. Cluster centers are
/// drawn uniformly in center_range squared and accepted only when far
/// enough from every accepted cluster; per-cluster variances (one shared
/// by both axes) are drawn uniformly up to a ceiling that starts at
/// variance_range.hi and shrinks by shrink_factor whenever max_attempts
/// consecutive draws fail the separation test.
struct GenConfig {
    std::size_t n_objects = 500;
    int k = 2;
    int imbalance_pct = 0;  // 0, 10, ..., 90; share of objects given to cluster 0
    std::uint64_t seed = 0;
    Interval center_range{0.0, 500.0};
    Interval variance_range{2.0, 50.0};
    double separation_factor = 3.0;
    std::size_t max_attempts = 10000;
    double shrink_factor = 0.95;
    double variance_floor = 1e-3;
};

struct ClusterSpec {
    double cx = 0.0;
    double cy = 0.0;
    double variance = 0.0;
    std::size_t size = 0;
};

struct GenMetadata {
    GenConfig config;
    std::vector<ClusterSpec> clusters;
    std::size_t shrink_events = 0;
    double final_variance_ceiling = 0.0;
};

struct SyntheticDataset {
    Dataset data;
    GenMetadata meta;
};

/// Cluster sizes for the requested imbalance. pct = 0 splits n as evenly
/// as possible; otherwise cluster 0 takes round(n*pct/100) objects and the
/// rest are split evenly over the remaining clusters.
inline std::vector<std::size_t> imbalanced_sizes(std::size_t n, int k, int pct) {
    if (k < 2) throw data_error("generator needs k >= 2 (got " + std::to_string(k) + ")");
    if (static_cast<std::size_t>(k) > n - 1) {
        throw data_error("generator needs k <= n-1 (got k=" + std::to_string(k) + ", n=" +
                         std::to_string(n) + ")");
    }
    if (pct < 0 || pct > 90 || pct % 10 != 0) {
        throw data_error("imbalance percentage must be one of 0,10,...,90 (got " +
                         std::to_string(pct) + ")");
    }
    std::size_t kk = static_cast<std::size_t>(k);
    std::vector<std::size_t> sizes(kk, 0);
    if (pct == 0) {
        std::size_t q = n / kk;
        std::size_t r = n % kk;
        for (std::size_t c = 0; c < kk; ++c) sizes[c] = q + (c < r ? 1 : 0);
    } else {
        auto big = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) * static_cast<double>(pct) / 100.0));
        if (big < 1 || big + (kk - 1) > n) {
            throw data_error("imbalance " + std::to_string(pct) + "% leaves no room for " +
                             std::to_string(k - 1) + " non-empty small clusters at n=" +
                             std::to_string(n));
        }
        sizes[0] = big;
        std::size_t rest = n - big;
        std::size_t q = rest / (kk - 1);
        std::size_t r = rest % (kk - 1);
        for (std::size_t c = 1; c < kk; ++c) sizes[c] = q + (c - 1 < r ? 1 : 0);
    }
    return sizes;
}

/// Largest cluster size divided by smallest.
inline double imbalance_ratio(const Partition& p) {
    auto sizes = p.cluster_sizes();
    auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
    return static_cast<double>(*mx) / static_cast<double>(*mn);
}

inline SyntheticDataset generate_synthetic(const GenConfig& cfg) {
    if (!cfg.center_range.valid() || !cfg.variance_range.valid()) {
        throw data_error("generator ranges must satisfy lo <= hi");
    }
    if (cfg.n_objects < 3) throw data_error("generator needs at least 3 objects");
    if (cfg.shrink_factor <= 0.0 || cfg.shrink_factor >= 1.0) {
        throw data_error("shrink factor must lie in (0,1)");
    }
    std::vector<std::size_t> sizes = imbalanced_sizes(cfg.n_objects, cfg.k, cfg.imbalance_pct);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> center_draw(cfg.center_range.lo, cfg.center_range.hi);

    GenMetadata meta;
    meta.config = cfg;
    double ceiling = cfg.variance_range.hi;

    std::vector<ClusterSpec> accepted;
    accepted.reserve(static_cast<std::size_t>(cfg.k));
    for (int c = 0; c < cfg.k; ++c) {
        std::size_t attempts = 0;
        for (;;) {
            if (ceiling < cfg.variance_floor) {
                throw data_error("cluster placement failed: variance ceiling shrank below " +
                                 std::to_string(cfg.variance_floor) +
                                 " before cluster " + std::to_string(c) + " fit");
            }
            double vlo = std::min(cfg.variance_range.lo, ceiling);
            std::uniform_real_distribution<double> var_draw(vlo, ceiling);
            ClusterSpec spec;
            spec.cx = center_draw(rng);
            spec.cy = center_draw(rng);
            spec.variance = var_draw(rng);
            spec.size = sizes[static_cast<std::size_t>(c)];
            double sigma = std::sqrt(spec.variance);
            bool ok = true;
            for (const ClusterSpec& other : accepted) {
                double dx = spec.cx - other.cx;
                double dy = spec.cy - other.cy;
                double dist = std::hypot(dx, dy);
                if (dist < cfg.separation_factor * (sigma + std::sqrt(other.variance))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                accepted.push_back(spec);
                break;
            }
            if (++attempts >= cfg.max_attempts) {
                ceiling *= cfg.shrink_factor;
                ++meta.shrink_events;
                attempts = 0;
            }
        }
    }
    meta.clusters = accepted;
    meta.final_variance_ceiling = ceiling;

    std::vector<double> features;
    features.reserve(cfg.n_objects * 2);
    std::vector<int> labels;
    labels.reserve(cfg.n_objects);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    for (int c = 0; c < cfg.k; ++c) {
        const ClusterSpec& spec = accepted[static_cast<std::size_t>(c)];
        double sigma = std::sqrt(spec.variance);
        for (std::size_t i = 0; i < spec.size; ++i) {
            features.push_back(spec.cx + sigma * unit_normal(rng));
            features.push_back(spec.cy + sigma * unit_normal(rng));
            labels.push_back(c);
        }
    }

    Dataset data(std::move(features), cfg.n_objects, 2, {}, Partition(labels, cfg.k));
    return SyntheticDataset{std::move(data), std::move(meta)};
}

}  // namespace clustval
