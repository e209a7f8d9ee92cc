#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"
#include "clustval/external_validation.hpp"

using namespace clustval;

namespace {

Partition random_partition(std::mt19937_64& rng, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
    std::shuffle(labels.begin(), labels.end(), rng);
    return Partition(labels, k);
}

}  // namespace

TEST_CASE("ari of identical partitions is exactly one") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Partition p = random_partition(rng, 30, 2 + t % 5);
        CHECK(adjusted_rand_index(p, p) == 1.0);
    }
}

TEST_CASE("ari hand value of zero") {
    Partition a({0, 0, 1, 1}, 2);
    Partition b({0, 0, 0, 1}, 2);
    CHECK(adjusted_rand_index(a, b) == 0.0);
}

TEST_CASE("ari crossed halves hand value") {
    Partition a({0, 0, 1, 1}, 2);
    Partition b({0, 1, 0, 1}, 2);
    CHECK_THAT(adjusted_rand_index(a, b), Catch::Matchers::WithinAbs(-0.5, 1e-15));
}

TEST_CASE("ari ignores label names") {
    std::mt19937_64 rng(5);
    Partition p = random_partition(rng, 40, 4);
    std::vector<int> renamed(p.size());
    int map[4] = {2, 0, 3, 1};
    for (std::size_t i = 0; i < p.size(); ++i) renamed[i] = map[p.label(i)];
    Partition q(renamed, 4);
    Partition other = random_partition(rng, 40, 3);
    CHECK(adjusted_rand_index(p, other) == adjusted_rand_index(q, other));
    CHECK(adjusted_rand_index(p, q) == 1.0);
}

TEST_CASE("ari is symmetric") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 25; ++t) {
        Partition a = random_partition(rng, 25, 2 + t % 4);
        Partition b = random_partition(rng, 25, 2 + (t + 1) % 4);
        CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));
    }
}

TEST_CASE("ari of independent partitions centers on zero") {
    std::mt19937_64 rng(11);
    double sum = 0.0;
    int trials = 1500;
    for (int t = 0; t < trials; ++t) {
        Partition a = random_partition(rng, 60, 3);
        Partition b = random_partition(rng, 60, 4);
        sum += adjusted_rand_index(a, b);
    }
    CHECK(std::abs(sum / trials) < 0.02);
}

TEST_CASE("ari rejects mismatched sizes") {
    Partition a({0, 0, 1, 1}, 2);
    Partition b({0, 0, 1, 1, 1}, 2);
    CHECK_THROWS_AS(adjusted_rand_index(a, b), data_error);
}

TEST_CASE("pearson hand values") {
    CHECK(pearson_correlation({1.0, 2.0, 3.0, 4.0}, {1.0, 3.0, 2.0, 4.0}) == 0.8);
    CHECK(pearson_correlation({1.0, 2.0, 3.0}, {10.0, 20.0, 30.0}) == 1.0);
    CHECK(pearson_correlation({1.0, 2.0, 3.0}, {5.0, 3.0, 1.0}) == -1.0);
}

TEST_CASE("pearson affine behavior") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    std::vector<double> x(20), y(20);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = value(rng);
        y[i] = value(rng);
    }
    double r = pearson_correlation(x, y);
    std::vector<double> ax(x);
    for (double& v : ax) v = 3.0 * v - 4.0;
    CHECK_THAT(pearson_correlation(ax, y), Catch::Matchers::WithinAbs(r, 1e-12));
    for (double& v : ax) v = -v;
    CHECK_THAT(pearson_correlation(ax, y), Catch::Matchers::WithinAbs(-r, 1e-12));
    CHECK(pearson_correlation(y, x) == r);
}

TEST_CASE("pearson stays inside the unit interval") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> value(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> x(5), y(5);
        for (std::size_t i = 0; i < 5; ++i) {
            x[i] = value(rng);
            y[i] = value(rng);
        }
        double r = pearson_correlation(x, y);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
    }
}

TEST_CASE("pearson input validation") {
    CHECK_THROWS_AS(pearson_correlation({1.0, 2.0}, {3.0, 4.0}), data_error);
    CHECK_THROWS_AS(pearson_correlation({1.0, 2.0, 3.0}, {3.0, 4.0}), data_error);
    CHECK_THROWS_AS(pearson_correlation({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), degenerate_error);
    CHECK_THROWS_AS(pearson_correlation({1.0, 2.0, 3.0}, {7.0, 7.0, 7.0}), degenerate_error);
}
