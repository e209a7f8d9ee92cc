#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "clustval/errors.hpp"
#include "clustval/stats.hpp"

using namespace clustval;

TEST_CASE("average ranks, best first") {
    CHECK(average_ranks({0.9, 0.1, 0.5}) == std::vector<double>{1.0, 3.0, 2.0});
    CHECK(average_ranks({0.5, 0.5, 0.1}) == std::vector<double>{1.5, 1.5, 3.0});
    CHECK(average_ranks({2.0, 2.0, 2.0, 2.0}) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
    CHECK(average_ranks({-1.0, 4.0}) == std::vector<double>{2.0, 1.0});
}

TEST_CASE("rank rows always sum to c(c+1)/2") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> level(0, 4);  // forces ties
    for (int t = 0; t < 100; ++t) {
        std::size_t c = 2 + static_cast<std::size_t>(t % 9);
        std::vector<double> row(c);
        for (double& v : row) v = level(rng) / 4.0;
        auto ranks = average_ranks(row);
        double sum = 0.0;
        for (double r : ranks) sum += r;
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(c * (c + 1) / 2.0, 1e-12));
    }
}

TEST_CASE("friedman statistic vanishes on constant rank patterns") {
    // identical columns: every row ranks the methods the same way by value;
    // all-equal rows: every method shares the average rank
    std::vector<std::vector<double>> equal_rows(6, std::vector<double>(4, 0.3));
    auto result = friedman_test(equal_rows);
    CHECK(result.statistic == 0.0);
    CHECK(result.p_value == 1.0);
    for (double r : result.mean_ranks) CHECK(r == 2.5);
}

TEST_CASE("friedman hand value on strictly consistent orders") {
    // three methods, always ranked 1,2,3: chi2 = 12*3/(3*4) * (14 - 12) = 6
    std::vector<std::vector<double>> matrix{
        {0.9, 0.5, 0.1}, {0.8, 0.6, 0.2}, {0.7, 0.4, 0.3}};
    auto result = friedman_test(matrix);
    CHECK(result.n_blocks == 3);
    CHECK(result.n_methods == 3);
    CHECK(result.mean_ranks == std::vector<double>{1.0, 2.0, 3.0});
    CHECK_THAT(result.statistic, Catch::Matchers::WithinAbs(6.0, 1e-12));
    CHECK_THAT(result.p_value, Catch::Matchers::WithinAbs(std::exp(-3.0), 1e-10));
}

TEST_CASE("friedman input validation") {
    CHECK_THROWS_AS(friedman_test({{1.0, 2.0}}), data_error);
    CHECK_THROWS_AS(friedman_test({{1.0}, {2.0}}), data_error);
    CHECK_THROWS_AS(friedman_test({{1.0, 2.0}, {1.0, 2.0, 3.0}}), data_error);
}

TEST_CASE("critical difference hand value") {
    // c=3, N=10: 2.343 * sqrt(3*4/60) = 2.343 * sqrt(0.2)
    double cd = nemenyi_critical_difference(3, 10, 0.05);
    CHECK_THAT(cd, Catch::Matchers::WithinAbs(1.048, 0.01));
    CHECK(nemenyi_critical_difference(3, 10, 0.10) < cd);
    CHECK(nemenyi_critical_difference(3, 40, 0.05) == cd / 2.0);
}

TEST_CASE("critical difference validation") {
    CHECK_THROWS_AS(nemenyi_critical_difference(1, 10, 0.05), data_error);
    CHECK_THROWS_AS(nemenyi_critical_difference(21, 10, 0.05), data_error);
    CHECK_THROWS_AS(nemenyi_critical_difference(3, 0, 0.05), data_error);
    CHECK_THROWS_AS(nemenyi_critical_difference(3, 10, 0.01), usage_error);
}

TEST_CASE("quantiles interpolate linearly") {
    std::vector<double> sorted{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile_sorted(sorted, 0.25) == 1.75);
    CHECK(quantile_sorted(sorted, 0.5) == 2.5);
    CHECK(quantile_sorted(sorted, 0.75) == 3.25);
    CHECK(quantile_sorted(sorted, 0.0) == 1.0);
    CHECK(quantile_sorted(sorted, 1.0) == 4.0);
    CHECK(quantile_sorted({7.0}, 0.5) == 7.0);
    CHECK_THROWS_AS(quantile_sorted({}, 0.5), data_error);
}

TEST_CASE("five number summary") {
    auto f = five_number_summary({4.0, 1.0, 3.0, 2.0});
    CHECK(f.min == 1.0);
    CHECK(f.q1 == 1.75);
    CHECK(f.median == 2.5);
    CHECK(f.q3 == 3.25);
    CHECK(f.max == 4.0);
}

TEST_CASE("mean and median") {
    CHECK(mean({1.0, 2.0, 6.0}) == 3.0);
    CHECK(median({0.9, 0.2, 0.5}) == 0.5);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK_THROWS_AS(mean({}), data_error);
    CHECK_THROWS_AS(median({}), data_error);
}

TEST_CASE("friedman p-value decreases with stronger evidence") {
    std::vector<std::vector<double>> weak{{0.9, 0.5, 0.1}, {0.1, 0.5, 0.9}, {0.9, 0.5, 0.1}};
    std::vector<std::vector<double>> strong(8, {0.9, 0.5, 0.1});
    CHECK(friedman_test(strong).p_value < friedman_test(weak).p_value);
    CHECK(friedman_test(strong).p_value < 0.01);
}
