#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"

using namespace clustval;

TEST_CASE("condensed_index enumerates pairs row-major") {
    CHECK(condensed_index(0, 1, 4) == 0);
    CHECK(condensed_index(0, 3, 4) == 2);
    CHECK(condensed_index(2, 3, 4) == 5);
    CHECK_THROWS_AS(condensed_index(1, 1, 4), data_error);
    CHECK_THROWS_AS(condensed_index(3, 1, 4), data_error);
    CHECK_THROWS_AS(condensed_index(0, 4, 4), data_error);
}

TEST_CASE("condensed_index round-trips with its inverse for all n <= 200") {
    for (std::size_t n : {2ul, 3ul, 5ul, 17ul, 64ul, 200ul}) {
        std::size_t p = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j, ++p) {
                REQUIRE(condensed_index(i, j, n) == p);
                auto [ri, rj] = condensed_pair(p, n);
                REQUIRE(ri == i);
                REQUIRE(rj == j);
            }
        }
        REQUIRE(p == pair_count(n));
    }
}

TEST_CASE("partition validation") {
    CHECK_NOTHROW(Partition({0, 1, 0, 1}, 2));
    CHECK_THROWS_AS(Partition({0, 0, 0, 0}, 1), data_error);   // k < 2
    CHECK_THROWS_AS(Partition({0, 1, 2, 3}, 4), data_error);   // k > n-1
    CHECK_THROWS_AS(Partition({0, 0, 2, 2}, 3), data_error);   // empty cluster 1
    CHECK_THROWS_AS(Partition({0, 1, 5, 1}, 3), data_error);   // label out of range
    CHECK_THROWS_AS(Partition({0, -1, 1, 1}, 2), data_error);  // negative label

    Partition p({0, 1, 1, 0, 1}, 2);
    CHECK(p.cluster_sizes() == std::vector<std::size_t>{2, 3});
    CHECK(p.within_pair_count() == 1 + 3);
}

TEST_CASE("from_labels compacts arbitrary integers") {
    Partition p = Partition::from_labels({7, -2, 7, 100, -2});
    CHECK(p.k() == 3);
    CHECK(p.labels() == std::vector<int>{1, 0, 1, 2, 0});
    CHECK_THROWS_AS(Partition::from_labels({5, 5, 5}), data_error);
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset({1.0, 2.0}, 2, 1), data_error);  // n < 3
    CHECK_THROWS_AS(Dataset({1.0, 2.0, std::numeric_limits<double>::infinity()}, 3, 1), data_error);
    CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, 3, 1, {"a", "a", "b"}), data_error);
    CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0, 4.0}, 3, 1), data_error);  // buffer mismatch

    Dataset d({1.0, 2.0, 3.0}, 3, 1);
    CHECK(d.ids() == std::vector<std::string>{"0", "1", "2"});
    CHECK(d.row(1)[0] == 2.0);
}

TEST_CASE("euclidean distances") {
    Dataset line({0.0, 1.0, 10.0}, 3, 1);
    auto d = euclidean_distances(line);
    CHECK(d.values() == std::vector<double>{1.0, 10.0, 9.0});

    Dataset plane({0.0, 0.0, 3.0, 4.0, 0.0, 0.0}, 3, 2);
    auto d2 = euclidean_distances(plane);
    CHECK(d2.at_pair(0, 1) == 5.0);
    CHECK(d2.at_pair(0, 2) == 0.0);  // duplicate points
}

TEST_CASE("euclidean distances satisfy the triangle inequality on random triples") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<double> rows(30 * 3);
    for (double& v : rows) v = coord(rng);
    Dataset data(std::move(rows), 30, 3);
    auto d = euclidean_distances(data);
    std::uniform_int_distribution<std::size_t> pick(0, 29);
    for (int t = 0; t < 500; ++t) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (a == b || b == c || a == c) continue;
        auto dist = [&](std::size_t i, std::size_t j) {
            return d.at_pair(std::min(i, j), std::max(i, j));
        };
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("similarities are negated distances, tie groups preserved") {
    CondensedPairVector d(3, {2.0, 2.0, 5.0});
    auto s = similarities_from_distances(d);
    CHECK(s.values() == std::vector<double>{-2.0, -2.0, -5.0});
}

TEST_CASE("co-membership flags") {
    CHECK(pairwise_co_membership(Partition({0, 0, 1}, 2)).values() ==
          std::vector<double>{1, 0, 0});
    CHECK(pairwise_co_membership(Partition({0, 0, 1, 1}, 2)).values() ==
          std::vector<double>{1, 0, 0, 0, 0, 1});

    auto c = pairwise_co_membership(Partition({0, 1, 2, 0}, 3));
    std::vector<double> expected(6, 0.0);
    expected[condensed_index(0, 3, 4)] = 1.0;
    CHECK(c.values() == expected);
}

TEST_CASE("co-membership of any valid partition has both classes") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<std::size_t> nd(3, 12);
        std::size_t n = nd(rng);
        std::uniform_int_distribution<int> kd(2, static_cast<int>(n) - 1);
        int k = kd(rng);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
        std::shuffle(labels.begin(), labels.end(), rng);
        auto co = pairwise_co_membership(Partition(labels, k));
        std::size_t ones = 0;
        for (double v : co.values()) ones += v > 0.5;
        CHECK(ones >= 1);
        CHECK(ones < co.size());
        CHECK(ones == Partition(labels, k).within_pair_count());
    }
}

TEST_CASE("co-membership is invariant to renaming cluster labels") {
    Partition p({0, 1, 2, 1, 0, 2}, 3);
    Partition renamed({2, 0, 1, 0, 2, 1}, 3);
    CHECK(pairwise_co_membership(p).values() == pairwise_co_membership(renamed).values());
}

TEST_CASE("condensed pair vector length is enforced") {
    CHECK_THROWS_AS(CondensedPairVector(4, {1.0, 2.0}), data_error);
    CHECK_NOTHROW(CondensedPairVector(4, std::vector<double>(6, 0.0)));
}

TEST_CASE("mix_seed derives distinct deterministic substreams") {
    CHECK(mix_seed(1, 0) == mix_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t salt = 0; salt < 100; ++salt) seen.insert(mix_seed(1234, salt));
    CHECK(seen.size() == 100);
}
