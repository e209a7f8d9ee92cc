#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "clustval/classic_cvis.hpp"
#include "clustval/core.hpp"
#include "clustval/cvi.hpp"
#include "clustval/errors.hpp"

using namespace clustval;

namespace {

// two tight pairs on a line, the workhorse hand instance
Dataset line_dataset() {
    return Dataset({0.0, 1.0, 10.0, 11.0}, 4, 1);
}

const Partition line_partition({0, 0, 1, 1}, 2);

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::vector<double> features(n * m);
    for (double& v : features) v = value(rng);
    return Dataset(std::move(features), n, m);
}

Partition random_partition(std::mt19937_64& rng, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
    std::shuffle(labels.begin(), labels.end(), rng);
    return Partition(labels, k);
}

Dataset affine(const Dataset& data, double scale, double shift) {
    std::vector<double> features(data.size() * data.dim());
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t t = 0; t < data.dim(); ++t) {
            features[i * data.dim() + t] = scale * data.row(i)[t] + shift;
        }
    }
    return Dataset(std::move(features), data.size(), data.dim());
}

}  // namespace

TEST_CASE("hand values on the two-pair line") {
    Dataset data = line_dataset();
    auto d = euclidean_distances(data);

    CHECK_THAT(swc(d, line_partition), Catch::Matchers::WithinAbs(359.0 / 399.0, 1e-15));
    CHECK(dunn(d, line_partition) == 9.0);
    CHECK(c_index(d, line_partition) == 0.0);
    CHECK_THAT(davies_bouldin(data, line_partition), Catch::Matchers::WithinAbs(0.1, 1e-15));
    CHECK_THAT(vrc(data, line_partition), Catch::Matchers::WithinAbs(200.0, 1e-12));
    CHECK_THAT(pbm(data, line_partition), Catch::Matchers::WithinAbs(2500.0, 1e-10));
    // distances correlate with the same-cluster flag: mean within 1, between 10
    double expected_pb = -9.0 * (std::sqrt(8.0) / 6.0) / std::sqrt(110.0 / 6.0);
    CHECK_THAT(point_biserial(d, line_partition), Catch::Matchers::WithinAbs(expected_pb, 1e-14));
    double expected_rl = std::sqrt(100.0 / 101.0) / std::sqrt(2.0);
    CHECK_THAT(ratkowsky_lance(data, line_partition),
               Catch::Matchers::WithinAbs(expected_rl, 1e-14));
}

TEST_CASE("compute_index dispatch matches the direct calls") {
    Dataset data = line_dataset();
    auto d = euclidean_distances(data);
    for (Cvi id : all_cvis()) {
        if (!is_classic(id)) continue;
        auto which = index_descriptor(id);
        double direct = 0.0;
        switch (id) {
            case Cvi::swc: direct = swc(d, line_partition); break;
            case Cvi::db: direct = davies_bouldin(data, line_partition); break;
            case Cvi::c_index: direct = c_index(d, line_partition); break;
            case Cvi::dunn: direct = dunn(d, line_partition); break;
            case Cvi::pbm: direct = pbm(data, line_partition); break;
            case Cvi::vrc: direct = vrc(data, line_partition); break;
            case Cvi::point_biserial: direct = point_biserial(d, line_partition); break;
            case Cvi::ratkowsky_lance: direct = ratkowsky_lance(data, line_partition); break;
            default: FAIL("unexpected id"); break;
        }
        CHECK(compute_index(which, data, d, line_partition) == direct);
    }
    CHECK_THROWS_AS(compute_index({Cvi::aucc, Direction::maximize}, data, d, line_partition),
                    data_error);
    CHECK_THROWS_AS(index_descriptor(Cvi::sauprc), data_error);
}

TEST_CASE("orientation flips only the minimized indices") {
    CHECK(index_descriptor(Cvi::db).direction == Direction::minimize);
    CHECK(index_descriptor(Cvi::c_index).direction == Direction::minimize);
    for (Cvi id : {Cvi::swc, Cvi::dunn, Cvi::pbm, Cvi::vrc, Cvi::point_biserial,
                   Cvi::ratkowsky_lance}) {
        CHECK(index_descriptor(id).direction == Direction::maximize);
        CHECK(orient(index_descriptor(id), 0.4) == 0.4);
    }
    CHECK(orient(index_descriptor(Cvi::db), 0.4) == -0.4);
    CHECK(orient(index_descriptor(Cvi::c_index), -0.25) == 0.25);
}

TEST_CASE("singleton clusters contribute zero silhouette") {
    Dataset data({0.0, 10.0, 11.0}, 3, 1);
    Partition p({0, 1, 1}, 2);
    double expected = (0.0 + 9.0 / 10.0 + 10.0 / 11.0) / 3.0;
    CHECK_THAT(swc(euclidean_distances(data), p), Catch::Matchers::WithinAbs(expected, 1e-15));
}

TEST_CASE("c_index accepts a precomputed prefix of sorted distances") {
    std::mt19937_64 rng(7);
    Dataset data = random_dataset(rng, 20, 3);
    auto d = euclidean_distances(data);

    std::vector<double> sorted(d.values());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> prefix(sorted.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];

    for (int t = 0; t < 10; ++t) {
        Partition p = random_partition(rng, 20, 4);
        CHECK(c_index(d, p) == c_index(d, p, &prefix));
    }
}

TEST_CASE("values are invariant under object reordering") {
    std::mt19937_64 rng(13);
    Dataset data = random_dataset(rng, 14, 2);
    Partition p = random_partition(rng, 14, 3);

    std::vector<std::size_t> perm(14);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> shuffled(14 * 2);
    std::vector<int> labels(14);
    for (std::size_t i = 0; i < 14; ++i) {
        shuffled[i * 2] = data.row(perm[i])[0];
        shuffled[i * 2 + 1] = data.row(perm[i])[1];
        labels[i] = p.label(perm[i]);
    }
    Dataset permuted(std::move(shuffled), 14, 2);
    Partition q(labels, 3);

    auto d = euclidean_distances(data);
    auto dq = euclidean_distances(permuted);
    CHECK_THAT(swc(dq, q), Catch::Matchers::WithinAbs(swc(d, p), 1e-12));
    CHECK_THAT(dunn(dq, q), Catch::Matchers::WithinAbs(dunn(d, p), 1e-12));
    CHECK_THAT(c_index(dq, q), Catch::Matchers::WithinAbs(c_index(d, p), 1e-12));
    CHECK_THAT(davies_bouldin(permuted, q), Catch::Matchers::WithinAbs(davies_bouldin(data, p), 1e-12));
    CHECK_THAT(pbm(permuted, q), Catch::Matchers::WithinAbs(pbm(data, p), 1e-9));
    CHECK_THAT(vrc(permuted, q), Catch::Matchers::WithinAbs(vrc(data, p), 1e-9));
    CHECK_THAT(point_biserial(dq, q), Catch::Matchers::WithinAbs(point_biserial(d, p), 1e-12));
    CHECK_THAT(ratkowsky_lance(permuted, q),
               Catch::Matchers::WithinAbs(ratkowsky_lance(data, p), 1e-12));
}

TEST_CASE("geometric invariances") {
    std::mt19937_64 rng(17);
    Dataset data = random_dataset(rng, 12, 2);
    Partition p = random_partition(rng, 12, 3);
    Dataset scaled = affine(data, 3.0, 0.0);
    Dataset shifted = affine(data, 1.0, 7.5);
    auto d = euclidean_distances(data);
    auto ds = euclidean_distances(scaled);
    auto dt = euclidean_distances(shifted);

    SECTION("translation leaves every index unchanged") {
        CHECK_THAT(swc(dt, p), Catch::Matchers::WithinAbs(swc(d, p), 1e-12));
        CHECK_THAT(dunn(dt, p), Catch::Matchers::WithinAbs(dunn(d, p), 1e-12));
        CHECK_THAT(c_index(dt, p), Catch::Matchers::WithinAbs(c_index(d, p), 1e-12));
        CHECK_THAT(davies_bouldin(shifted, p),
                   Catch::Matchers::WithinAbs(davies_bouldin(data, p), 1e-12));
        CHECK_THAT(pbm(shifted, p), Catch::Matchers::WithinRel(pbm(data, p), 1e-9));
        CHECK_THAT(vrc(shifted, p), Catch::Matchers::WithinRel(vrc(data, p), 1e-9));
        CHECK_THAT(point_biserial(dt, p),
                   Catch::Matchers::WithinAbs(point_biserial(d, p), 1e-12));
        CHECK_THAT(ratkowsky_lance(shifted, p),
                   Catch::Matchers::WithinAbs(ratkowsky_lance(data, p), 1e-12));
    }

    SECTION("uniform scaling cancels in the ratio-shaped indices") {
        CHECK_THAT(swc(ds, p), Catch::Matchers::WithinAbs(swc(d, p), 1e-12));
        CHECK_THAT(dunn(ds, p), Catch::Matchers::WithinAbs(dunn(d, p), 1e-12));
        CHECK_THAT(c_index(ds, p), Catch::Matchers::WithinAbs(c_index(d, p), 1e-12));
        CHECK_THAT(davies_bouldin(scaled, p),
                   Catch::Matchers::WithinAbs(davies_bouldin(data, p), 1e-12));
        CHECK_THAT(vrc(scaled, p), Catch::Matchers::WithinRel(vrc(data, p), 1e-9));
        CHECK_THAT(point_biserial(ds, p),
                   Catch::Matchers::WithinAbs(point_biserial(d, p), 1e-12));
        CHECK_THAT(ratkowsky_lance(scaled, p),
                   Catch::Matchers::WithinAbs(ratkowsky_lance(data, p), 1e-12));
    }

    SECTION("pbm grows with the square of the scale") {
        CHECK_THAT(pbm(scaled, p), Catch::Matchers::WithinRel(9.0 * pbm(data, p), 1e-9));
    }
}

TEST_CASE("degenerate geometry raises degenerate_error") {
    SECTION("zero spread between min and max within-pair sums") {
        Dataset data({2.0, 2.0, 2.0}, 3, 1);
        Partition p({0, 0, 1}, 2);
        CHECK_THROWS_AS(c_index(euclidean_distances(data), p), degenerate_error);
    }
    SECTION("zero within-cluster diameter") {
        Dataset data({0.0, 0.0, 5.0}, 3, 1);
        Partition p({0, 0, 1}, 2);
        CHECK_THROWS_AS(dunn(euclidean_distances(data), p), degenerate_error);
    }
    SECTION("zero within-cluster scatter") {
        Dataset data({0.0, 0.0, 5.0, 5.0}, 4, 1);
        Partition p({0, 0, 1, 1}, 2);
        CHECK_THROWS_AS(pbm(data, p), degenerate_error);
        CHECK_THROWS_AS(vrc(data, p), degenerate_error);
    }
    SECTION("zero distance variance") {
        Dataset data({2.0, 2.0, 2.0}, 3, 1);
        Partition p({0, 0, 1}, 2);
        CHECK_THROWS_AS(point_biserial(euclidean_distances(data), p), degenerate_error);
    }
    SECTION("coincident cluster centroids") {
        Dataset data({0.0, 2.0, 1.0, 1.0}, 4, 1);
        Partition p({0, 0, 1, 1}, 2);
        CHECK_THROWS_AS(davies_bouldin(data, p), degenerate_error);
    }
    SECTION("constant attribute") {
        Dataset data({0.0, 1.0, 1.0, 1.0, 10.0, 1.0, 11.0, 1.0}, 4, 2);
        Partition p({0, 0, 1, 1}, 2);
        CHECK_THROWS_AS(ratkowsky_lance(data, p), degenerate_error);
    }
}

TEST_CASE("cvi id parsing") {
    CHECK(parse_cvi("sauprc") == Cvi::sauprc);
    CHECK(parse_cvi("c_index") == Cvi::c_index);
    CHECK_THROWS_AS(parse_cvi("silhouette"), usage_error);
    CHECK(all_cvis().size() == 12);
    auto ids = parse_cvi_list("aucc,swc,db");
    REQUIRE(ids.size() == 3);
    CHECK(ids[0] == Cvi::aucc);
    CHECK(ids[2] == Cvi::db);
    for (Cvi id : all_cvis()) CHECK(parse_cvi(to_string(id)) == id);
}
