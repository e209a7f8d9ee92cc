#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustval/errors.hpp"

namespace clustval {

/// Number of unordered object pairs for n objects.
inline std::size_t pair_count(std::size_t n) {
    return n * (n - 1) / 2;
}

/// Position of pair (i, j) in the canonical enumeration
/// (0,1),(0,2),...,(0,n-1),(1,2),... Requires i < j < n.
inline std::size_t condensed_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= j || j >= n) {
        throw data_error("invalid pair (" + std::to_string(i) + "," + std::to_string(j) +
                         "): require i < j < n with n=" + std::to_string(n));
    }
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Inverse of condensed_index.
inline std::pair<std::size_t, std::size_t> condensed_pair(std::size_t p, std::size_t n) {
    if (n < 2 || p >= pair_count(n)) {
        throw data_error("condensed pair index " + std::to_string(p) + " out of range for n=" +
                         std::to_string(n));
    }
    // Row from the quadratic bound, then fix up any floating point slack.
    double nd = static_cast<double>(n);
    std::size_t i = static_cast<std::size_t>(
        (2.0 * nd - 1.0 - std::sqrt((2.0 * nd - 1.0) * (2.0 * nd - 1.0) - 8.0 * static_cast<double>(p))) / 2.0);
    auto row_start = [n](std::size_t r) { return r * n - r * (r + 1) / 2; };
    while (i > 0 && row_start(i) > p) --i;
    while (row_start(i + 1) <= p) ++i;
    std::size_t j = p - row_start(i) + i + 1;
    return {i, j};
}

/// Hard partition of n objects into k disjoint, non-empty clusters,
/// 2 <= k <= n-1. Labels are cluster indices in [0, k).
class Partition {
public:
    Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
        validate();
    }

    /// Builds a partition from arbitrary integer labels by mapping the
    /// sorted distinct values onto [0, k).
    static Partition from_labels(const std::vector<int>& raw) {
        std::vector<int> distinct(raw);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::map<int, int> remap;
        for (std::size_t r = 0; r < distinct.size(); ++r) remap[distinct[r]] = static_cast<int>(r);
        std::vector<int> labels(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) labels[i] = remap.at(raw[i]);
        return Partition(std::move(labels), static_cast<int>(distinct.size()));
    }

    int k() const { return k_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<int>& labels() const { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
        for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
        return sizes;
    }

    /// Total number of within-cluster pairs, sum over clusters of |C|(|C|-1)/2.
    std::size_t within_pair_count() const {
        std::size_t w = 0;
        for (std::size_t s : cluster_sizes()) w += s * (s - 1) / 2;
        return w;
    }

private:
    void validate() const {
        std::size_t n = labels_.size();
        if (k_ < 2 || static_cast<std::size_t>(k_) > n - 1 || n < 3) {
            throw data_error("partition requires 2 <= k <= n-1 (got k=" + std::to_string(k_) +
                             ", n=" + std::to_string(n) + ")");
        }
        std::vector<bool> seen(static_cast<std::size_t>(k_), false);
        for (int l : labels_) {
            if (l < 0 || l >= k_) {
                throw data_error("cluster label " + std::to_string(l) + " outside [0," +
                                 std::to_string(k_) + ")");
            }
            seen[static_cast<std::size_t>(l)] = true;
        }
        for (int c = 0; c < k_; ++c) {
            if (!seen[static_cast<std::size_t>(c)]) {
                throw data_error("empty cluster " + std::to_string(c));
            }
        }
    }

    std::vector<int> labels_;
    int k_;
};

/// n objects in m-dimensional real space, with optional ground truth.
class Dataset {
public:
    Dataset(std::vector<double> features, std::size_t n, std::size_t m,
            std::vector<std::string> ids = {}, std::optional<Partition> ground_truth = std::nullopt)
        : features_(std::move(features)), n_(n), m_(m), ids_(std::move(ids)),
          ground_truth_(std::move(ground_truth)) {
        if (n_ < 3) throw data_error("dataset requires n >= 3 objects (got " + std::to_string(n_) + ")");
        if (m_ < 1) throw data_error("dataset requires m >= 1 features");
        if (features_.size() != n_ * m_) {
            throw data_error("feature buffer size " + std::to_string(features_.size()) +
                             " does not match n*m=" + std::to_string(n_ * m_));
        }
        for (double v : features_) {
            if (!std::isfinite(v)) throw data_error("non-finite feature value");
        }
        if (ids_.empty()) {
            ids_.reserve(n_);
            for (std::size_t i = 0; i < n_; ++i) ids_.push_back(std::to_string(i));
        }
        if (ids_.size() != n_) throw data_error("id count does not match object count");
        std::vector<std::string> sorted_ids(ids_);
        std::sort(sorted_ids.begin(), sorted_ids.end());
        if (std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) != sorted_ids.end()) {
            throw data_error("object ids are not unique");
        }
        if (ground_truth_ && ground_truth_->size() != n_) {
            throw data_error("ground truth size does not match object count");
        }
    }

    std::size_t size() const { return n_; }
    std::size_t dim() const { return m_; }
    std::span<const double> row(std::size_t i) const { return {features_.data() + i * m_, m_}; }
    const std::vector<double>& features() const { return features_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::optional<Partition>& ground_truth() const { return ground_truth_; }

private:
    std::vector<double> features_;
    std::size_t n_;
    std::size_t m_;
    std::vector<std::string> ids_;
    std::optional<Partition> ground_truth_;
};

/// Upper-triangle flattening of a symmetric pairwise structure: one value
/// per unordered object pair, in canonical enumeration order.
class CondensedPairVector {
public:
    CondensedPairVector(std::size_t n_objects, std::vector<double> values)
        : n_(n_objects), values_(std::move(values)) {
        if (values_.size() != pair_count(n_)) {
            throw data_error("condensed vector length " + std::to_string(values_.size()) +
                             " is not n(n-1)/2 for n=" + std::to_string(n_));
        }
    }

    static CondensedPairVector zeros(std::size_t n_objects) {
        return CondensedPairVector(n_objects, std::vector<double>(pair_count(n_objects), 0.0));
    }

    std::size_t n_objects() const { return n_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t p) const { return values_[p]; }
    double& operator[](std::size_t p) { return values_[p]; }
    double at_pair(std::size_t i, std::size_t j) const { return values_[condensed_index(i, j, n_)]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// Pair counts of one binary decision threshold.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

/// Pairwise distances under a caller-supplied metric.
template <typename DistanceFn>
CondensedPairVector pairwise_distances(const Dataset& data, DistanceFn&& metric) {
    std::size_t n = data.size();
    std::vector<double> out(pair_count(n));
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto ri = data.row(i);
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            out[p] = metric(ri, data.row(j));
        }
    }
    return CondensedPairVector(n, std::move(out));
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        double d = a[t] - b[t];
        acc += d * d;
    }
    return std::sqrt(acc);
}

inline CondensedPairVector euclidean_distances(const Dataset& data) {
    return pairwise_distances(data, euclidean);
}

/// Order-reversing distance-to-similarity transform, s = -d. Every curve
/// metric downstream depends only on the similarity ranking, so any
/// strictly decreasing transform of d yields identical scores.
inline CondensedPairVector similarities_from_distances(const CondensedPairVector& d) {
    std::vector<double> s(d.size());
    for (std::size_t p = 0; p < d.size(); ++p) s[p] = -d[p];
    return CondensedPairVector(d.n_objects(), std::move(s));
}

/// Pairwise co-membership flags: 1 when both objects share a cluster.
/// Partition invariants guarantee at least one 1 and one 0.
inline CondensedPairVector pairwise_co_membership(const Partition& p) {
    std::size_t n = p.size();
    std::vector<double> flags(pair_count(n));
    const auto& labels = p.labels();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            flags[idx] = labels[i] == labels[j] ? 1.0 : 0.0;
        }
    }
    return CondensedPairVector(n, std::move(flags));
}

/// splitmix64-style mixer for deriving independent substream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace clustval
