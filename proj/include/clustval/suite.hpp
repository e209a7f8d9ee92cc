#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"
#include "clustval/hierarchical.hpp"
#include "clustval/kmeans.hpp"

namespace clustval {

struct SuiteEntry {
    std::string algorithm;  // kmeans | single | average | complete | ward
    int k = 0;
    Partition partition;
};

/// Smallest s with s*s >= n.
inline int ceil_sqrt(std::size_t n) {
    int s = 0;
    while (static_cast<std::size_t>(s) * static_cast<std::size_t>(s) < n) ++s;
    return s;
}

inline std::vector<std::string> suite_algorithms() {
    return {"kmeans", "single", "average", "complete", "ward"};
}

/// Candidate partitions for one dataset: for every k in [2, ceil(sqrt(n))],
/// one k-means result (seeded per k) and one cut of each linkage tree.
/// Entries are ordered by k, then kmeans/single/average/complete/ward.
inline std::vector<SuiteEntry> partition_suite(const Dataset& data, std::uint64_t seed) {
    const std::size_t n = data.size();
    if (n < 9) {
        throw data_error("partition suite needs at least 9 objects (got " + std::to_string(n) +
                         ") so the k range is non-trivial");
    }
    const int k_max = ceil_sqrt(n);

    CondensedPairVector distances = euclidean_distances(data);
    const Linkage linkages[] = {Linkage::single, Linkage::average, Linkage::complete, Linkage::ward};
    std::vector<MergeTree> trees;
    trees.reserve(4);
    for (Linkage l : linkages) trees.push_back(hac_merge_tree(distances, l));

    std::vector<SuiteEntry> entries;
    entries.reserve(static_cast<std::size_t>(k_max - 1) * 5);
    for (int k = 2; k <= k_max; ++k) {
        entries.push_back({"kmeans", k, kmeans(data, k, mix_seed(seed, static_cast<std::uint64_t>(k)))});
        for (std::size_t t = 0; t < 4; ++t) {
            entries.push_back({to_string(linkages[t]), k, cut_tree(trees[t], k)});
        }
    }
    return entries;
}

}  // namespace clustval
