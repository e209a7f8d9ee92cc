#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

namespace clustval {

enum class Linkage { single, average, complete, ward };

inline const char* to_string(Linkage l) {
    switch (l) {
        case Linkage::single: return "single";
        case Linkage::average: return "average";
        case Linkage::complete: return "complete";
        case Linkage::ward: return "ward";
    }
    return "?";
}

inline Linkage parse_linkage(const std::string& name) {
    if (name == "single") return Linkage::single;
    if (name == "average") return Linkage::average;
    if (name == "complete") return Linkage::complete;
    if (name == "ward") return Linkage::ward;
    throw usage_error("unknown linkage '" + name + "' (expected single, average, complete or ward)");
}

/// One agglomeration step. `left` and `right` are cluster ids: leaves are
/// 0..n-1, the cluster formed at step t gets id n+t. left < right always.
/// For ward the height is the increase in total within-cluster sum of
/// squares caused by the merge; for the other linkages it is the linkage
/// distance between the merged clusters.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
};

struct MergeTree {
    std::size_t n_leaves = 0;
    std::vector<Merge> merges;  // n_leaves - 1 entries
};

/// Full agglomeration of a condensed distance matrix. Ties are broken by
/// the lexicographically smallest (i, j) pair of current cluster slots,
/// which makes the tree deterministic for any input.
inline MergeTree hac_merge_tree(const CondensedPairVector& distances, Linkage linkage) {
    const std::size_t n = distances.n_objects();
    MergeTree tree;
    tree.n_leaves = n;
    tree.merges.reserve(n - 1);

    const double inf = std::numeric_limits<double>::infinity();
    const bool squared = (linkage == Linkage::ward);

    // full working matrix over slots; slot i starts as leaf i
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = distances.values()[condensed_index(i, j, n)];
            double v = squared ? d * d : d;
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }

    std::vector<bool> alive(n, true);
    std::vector<std::size_t> csize(n, 1);
    std::vector<std::size_t> cid(n);
    std::iota(cid.begin(), cid.end(), 0);

    // per-slot nearest neighbour among alive slots j > i
    std::vector<double> nn_dist(n, inf);
    std::vector<std::size_t> nn_of(n, n);
    auto recompute_row = [&](std::size_t i) {
        double best = inf;
        std::size_t best_j = n;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!alive[j]) continue;
            double v = w[i * n + j];
            if (v < best) {
                best = v;
                best_j = j;
            }
        }
        nn_dist[i] = best;
        nn_of[i] = best_j;
    };
    for (std::size_t i = 0; i < n; ++i) recompute_row(i);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t a = n;
        double best = inf;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            if (nn_dist[i] < best) {
                best = nn_dist[i];
                a = i;
            }
        }
        std::size_t b = nn_of[a];
        double dab = w[a * n + b];

        Merge merge;
        merge.left = std::min(cid[a], cid[b]);
        merge.right = std::max(cid[a], cid[b]);
        merge.height = (linkage == Linkage::ward) ? dab / 2.0 : dab;
        tree.merges.push_back(merge);

        const double na = static_cast<double>(csize[a]);
        const double nb = static_cast<double>(csize[b]);
        for (std::size_t c = 0; c < n; ++c) {
            if (!alive[c] || c == a || c == b) continue;
            double dac = w[a * n + c];
            double dbc = w[b * n + c];
            double merged;
            switch (linkage) {
                case Linkage::single: merged = std::min(dac, dbc); break;
                case Linkage::complete: merged = std::max(dac, dbc); break;
                case Linkage::average: merged = (na * dac + nb * dbc) / (na + nb); break;
                case Linkage::ward: {
                    double nc = static_cast<double>(csize[c]);
                    merged = ((na + nc) * dac + (nb + nc) * dbc - nc * dab) / (na + nb + nc);
                    break;
                }
                default: merged = 0.0; break;
            }
            w[a * n + c] = merged;
            w[c * n + a] = merged;
        }

        alive[b] = false;
        csize[a] += csize[b];
        cid[a] = n + step;
        nn_dist[b] = inf;
        nn_of[b] = n;

        recompute_row(a);
        for (std::size_t i = 0; i < a; ++i) {
            if (!alive[i]) continue;
            if (nn_of[i] == a || nn_of[i] == b) {
                recompute_row(i);
            } else {
                double v = w[i * n + a];
                if (v < nn_dist[i] || (v == nn_dist[i] && a < nn_of[i])) {
                    nn_dist[i] = v;
                    nn_of[i] = a;
                }
            }
        }
        for (std::size_t i = a + 1; i < b; ++i) {
            if (alive[i] && nn_of[i] == b) recompute_row(i);
        }
    }
    return tree;
}

/// Cut the tree into k clusters by undoing the last k-1 merges. Clusters
/// are labelled 0..k-1 in order of their smallest member index.
inline Partition cut_tree(const MergeTree& tree, int k) {
    const std::size_t n = tree.n_leaves;
    if (k < 2 || static_cast<std::size_t>(k) > n - 1) {
        throw data_error("tree cut requires 2 <= k <= n-1 (got k=" + std::to_string(k) + ")");
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    // rep[id] = one leaf inside cluster `id`
    std::vector<std::size_t> rep(2 * n - 1, 0);
    std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), 0);
    const std::size_t applied = n - static_cast<std::size_t>(k);
    for (std::size_t t = 0; t < applied; ++t) {
        const Merge& m = tree.merges[t];
        std::size_t ra = find(rep[m.left]);
        std::size_t rb = find(rep[m.right]);
        parent[rb] = ra;
        rep[n + t] = ra;
    }

    std::vector<int> root_label(n, -1);
    std::vector<int> labels(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return Partition(labels, k);
}

inline Partition hierarchical_cut(const CondensedPairVector& distances, Linkage linkage, int k) {
    return cut_tree(hac_merge_tree(distances, linkage), k);
}

}  // namespace clustval
