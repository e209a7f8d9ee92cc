#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/cvi.hpp"
#include "clustval/errors.hpp"

namespace clustval {

struct IndexDescriptor {
    Cvi id;
    Direction direction;
};

/// Descriptor for one of the eight classical indices.
inline IndexDescriptor index_descriptor(Cvi id) {
    if (!is_classic(id)) {
        throw data_error("'" + to_string(id) + "' is not a classical index");
    }
    return {id, direction(id)};
}

/// Maps a raw score so that larger is always better: negates
/// minimize-direction indices, passes maximize-direction ones through.
inline double orient(const IndexDescriptor& which, double score) {
    return which.direction == Direction::minimize ? -score : score;
}

namespace detail {

inline std::vector<double> centroid_matrix(const Dataset& data, const Partition& p) {
    std::size_t m = data.dim();
    std::size_t k = static_cast<std::size_t>(p.k());
    std::vector<double> centroids(k * m, 0.0);
    auto sizes = p.cluster_sizes();
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        std::size_t c = static_cast<std::size_t>(p.label(i));
        for (std::size_t t = 0; t < m; ++t) centroids[c * m + t] += row[t];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < m; ++t) centroids[c * m + t] /= static_cast<double>(sizes[c]);
    }
    return centroids;
}

inline std::vector<double> global_centroid(const Dataset& data) {
    std::size_t m = data.dim();
    std::vector<double> c(m, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        for (std::size_t t = 0; t < m; ++t) c[t] += row[t];
    }
    for (std::size_t t = 0; t < m; ++t) c[t] /= static_cast<double>(data.size());
    return c;
}

inline double span_distance(std::span<const double> a, std::span<const double> b) {
    return euclidean(a, b);
}

}  // namespace detail

/// Silhouette width criterion. For each object, a is the mean distance to
/// its own cluster (excluding itself) and b the smallest mean distance to
/// another cluster; the object contributes (b-a)/max(a,b), or 0 when it is
/// a singleton or max(a,b) = 0.
inline double swc(const CondensedPairVector& d, const Partition& p) {
    std::size_t n = p.size();
    std::size_t k = static_cast<std::size_t>(p.k());
    auto sizes = p.cluster_sizes();
    // sum of distances from each object to each cluster, one pass over pairs
    std::vector<double> to_cluster(n * k, 0.0);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            to_cluster[i * k + static_cast<std::size_t>(p.label(j))] += d[idx];
            to_cluster[j * k + static_cast<std::size_t>(p.label(i))] += d[idx];
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t own = static_cast<std::size_t>(p.label(i));
        if (sizes[own] == 1) continue;  // singleton contributes 0
        double a = to_cluster[i * k + own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own) continue;
            b = std::min(b, to_cluster[i * k + c] / static_cast<double>(sizes[c]));
        }
        double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

/// Davies-Bouldin: mean over clusters of the worst (S_i+S_j)/||c_i-c_j||
/// pairing, S being the mean member-to-centroid distance.
inline double davies_bouldin(const Dataset& data, const Partition& p) {
    std::size_t k = static_cast<std::size_t>(p.k());
    std::size_t m = data.dim();
    auto centroids = detail::centroid_matrix(data, p);
    auto sizes = p.cluster_sizes();
    std::vector<double> scatter(k, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t c = static_cast<std::size_t>(p.label(i));
        scatter[c] += detail::span_distance(data.row(i), {centroids.data() + c * m, m});
    }
    for (std::size_t c = 0; c < k; ++c) scatter[c] /= static_cast<double>(sizes[c]);

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            double sep = detail::span_distance({centroids.data() + i * m, m},
                                               {centroids.data() + j * m, m});
            if (sep == 0.0) {
                throw degenerate_error("davies-bouldin undefined: coincident centroids");
            }
            worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
        }
        sum += worst;
    }
    return sum / static_cast<double>(k);
}

/// C index: (S - S_min) / (S_max - S_min), where S sums the within-pair
/// distances and S_min/S_max sum the N_w smallest/largest distances overall.
/// `sorted_prefix` may pass a precomputed cumulative sum of the ascending
/// distance values to amortize the sort across partitions.
inline double c_index(const CondensedPairVector& d, const Partition& p,
                      const std::vector<double>* sorted_prefix = nullptr) {
    std::size_t n = p.size();
    double within_sum = 0.0;
    std::size_t within_count = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            if (p.label(i) == p.label(j)) {
                within_sum += d[idx];
                ++within_count;
            }
        }
    }
    std::vector<double> local;
    if (sorted_prefix == nullptr) {
        local.assign(1, 0.0);
        std::vector<double> sorted(d.values());
        std::sort(sorted.begin(), sorted.end());
        local.reserve(sorted.size() + 1);
        for (double v : sorted) local.push_back(local.back() + v);
        sorted_prefix = &local;
    }
    const auto& prefix = *sorted_prefix;
    double s_min = prefix[within_count];
    double s_max = prefix.back() - prefix[prefix.size() - 1 - within_count];
    if (s_max == s_min) {
        throw degenerate_error("c-index undefined: S_max equals S_min");
    }
    return (within_sum - s_min) / (s_max - s_min);
}

/// Dunn: smallest between-cluster distance over the largest cluster
/// diameter.
inline double dunn(const CondensedPairVector& d, const Partition& p) {
    std::size_t n = p.size();
    double min_between = std::numeric_limits<double>::infinity();
    double max_diameter = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            if (p.label(i) == p.label(j)) {
                max_diameter = std::max(max_diameter, d[idx]);
            } else {
                min_between = std::min(min_between, d[idx]);
            }
        }
    }
    if (max_diameter == 0.0) {
        throw degenerate_error("dunn undefined: every cluster has zero diameter");
    }
    return min_between / max_diameter;
}

/// PBM: ((1/k) * (E_1/E_k) * D_k)^2 with E_1 the distances to the global
/// centroid, E_k the distances to the owning centroid, D_k the largest
/// centroid separation.
inline double pbm(const Dataset& data, const Partition& p) {
    std::size_t k = static_cast<std::size_t>(p.k());
    std::size_t m = data.dim();
    auto centroids = detail::centroid_matrix(data, p);
    auto global = detail::global_centroid(data);
    double e1 = 0.0, ek = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t c = static_cast<std::size_t>(p.label(i));
        e1 += detail::span_distance(data.row(i), global);
        ek += detail::span_distance(data.row(i), {centroids.data() + c * m, m});
    }
    double dk = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            dk = std::max(dk, detail::span_distance({centroids.data() + i * m, m},
                                                    {centroids.data() + j * m, m}));
        }
    }
    if (ek == 0.0) {
        throw degenerate_error("pbm undefined: zero within-cluster dispersion");
    }
    double v = (1.0 / static_cast<double>(k)) * (e1 / ek) * dk;
    return v * v;
}

/// Calinski-Harabasz variance ratio criterion:
/// [trace(B)/(k-1)] / [trace(W)/(n-k)].
inline double vrc(const Dataset& data, const Partition& p) {
    std::size_t k = static_cast<std::size_t>(p.k());
    std::size_t m = data.dim();
    auto centroids = detail::centroid_matrix(data, p);
    auto global = detail::global_centroid(data);
    auto sizes = p.cluster_sizes();
    double trace_w = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t c = static_cast<std::size_t>(p.label(i));
        auto row = data.row(i);
        for (std::size_t t = 0; t < m; ++t) {
            double dv = row[t] - centroids[c * m + t];
            trace_w += dv * dv;
        }
    }
    double trace_b = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < m; ++t) {
            double dv = centroids[c * m + t] - global[t];
            trace_b += static_cast<double>(sizes[c]) * dv * dv;
        }
    }
    if (trace_w == 0.0) {
        throw degenerate_error("vrc undefined: zero within-cluster scatter");
    }
    double n = static_cast<double>(data.size());
    return (trace_b / (static_cast<double>(k) - 1.0)) / (trace_w / (n - static_cast<double>(k)));
}

/// Point biserial correlation between the pair distances and the
/// same-cluster indicator (1 = same cluster):
/// (mean within - mean between) * sqrt(N_w*N_b)/N_t, divided by the
/// population standard deviation of all pair distances.
inline double point_biserial(const CondensedPairVector& d, const Partition& p) {
    std::size_t n = p.size();
    double sum_within = 0.0, sum_between = 0.0;
    std::size_t n_within = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            if (p.label(i) == p.label(j)) {
                sum_within += d[idx];
                ++n_within;
            } else {
                sum_between += d[idx];
            }
        }
    }
    std::size_t n_total = d.size();
    std::size_t n_between = n_total - n_within;
    double mean_all = (sum_within + sum_between) / static_cast<double>(n_total);
    double ss = 0.0;
    for (std::size_t t = 0; t < n_total; ++t) {
        double dv = d[t] - mean_all;
        ss += dv * dv;
    }
    double sd = std::sqrt(ss / static_cast<double>(n_total));
    if (sd == 0.0) {
        throw degenerate_error("point-biserial undefined: zero distance variance");
    }
    double mean_within = sum_within / static_cast<double>(n_within);
    double mean_between = sum_between / static_cast<double>(n_between);
    double weight = std::sqrt(static_cast<double>(n_within) * static_cast<double>(n_between)) /
                    static_cast<double>(n_total);
    return (mean_within - mean_between) * weight / sd;
}

/// Ratkowsky-Lance: sqrt(mean over attributes of SSB_j/SST_j) / sqrt(k).
inline double ratkowsky_lance(const Dataset& data, const Partition& p) {
    std::size_t k = static_cast<std::size_t>(p.k());
    std::size_t m = data.dim();
    auto centroids = detail::centroid_matrix(data, p);
    auto global = detail::global_centroid(data);
    auto sizes = p.cluster_sizes();
    double ratio_sum = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        double ssb = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double dv = centroids[c * m + t] - global[t];
            ssb += static_cast<double>(sizes[c]) * dv * dv;
        }
        double sst = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            double dv = data.row(i)[t] - global[t];
            sst += dv * dv;
        }
        if (sst == 0.0) {
            throw degenerate_error("ratkowsky-lance undefined: constant attribute");
        }
        ratio_sum += ssb / sst;
    }
    return std::sqrt(ratio_sum / static_cast<double>(m)) / std::sqrt(static_cast<double>(k));
}

/// Dispatch by descriptor. Centroid-based indices read the dataset,
/// pair-based ones only the distances.
inline double compute_index(const IndexDescriptor& which, const Dataset& data,
                            const CondensedPairVector& d, const Partition& p) {
    switch (which.id) {
        case Cvi::swc: return swc(d, p);
        case Cvi::db: return davies_bouldin(data, p);
        case Cvi::c_index: return c_index(d, p);
        case Cvi::dunn: return dunn(d, p);
        case Cvi::pbm: return pbm(data, p);
        case Cvi::vrc: return vrc(data, p);
        case Cvi::point_biserial: return point_biserial(d, p);
        case Cvi::ratkowsky_lance: return ratkowsky_lance(data, p);
        default:
            throw data_error("'" + to_string(which.id) + "' is not a classical index");
    }
}

}  // namespace clustval
