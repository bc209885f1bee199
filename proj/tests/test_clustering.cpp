#include <doctest.h>

#include <softsel/clustering.hpp>
#include <softsel/error.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace softsel;
using namespace softsel::clustering;

namespace {

DataMatrix blobs() { return DataMatrix(4, 2, {0, 0, 0, 1, 10, 0, 10, 1}); }

ClusterAssignment labelled(std::vector<std::size_t> labels) {
    ClusterAssignment a;
    std::size_t k = 0;
    for (auto l : labels) k = std::max(k, l + 1);
    a.k = k;
    a.labels = std::move(labels);
    return a;
}

DataMatrix scaled(const DataMatrix& d, double c) {
    auto v = d.values();
    for (auto& x : v) x *= c;
    return DataMatrix(d.rows(), d.cols(), v);
}

DataMatrix random_points(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 6 + rng() % 40;
    const std::size_t d = 1 + rng() % 5;
    std::normal_distribution<double> g(0.0, 3.0);
    std::vector<double> v(n * d);
    for (auto& x : v) x = g(rng);
    return DataMatrix(n, d, v);
}

tabular::FeatureTable blob_table() {
    tabular::FeatureTable t({"x", "y"});
    const auto d = blobs();
    for (std::size_t i = 0; i < 4; ++i) t.add_row("p" + std::to_string(i), {d(i, 0), d(i, 1)});
    return t;
}

}  // namespace

TEST_SUITE("standardize") {
    TEST_CASE("unit column") {
        const auto s = standardize(DataMatrix(3, 2, {1, 7, 2, 7, 3, 7}));
        double mean = 0, sq = 0;
        for (std::size_t i = 0; i < 3; ++i) mean += s(i, 0);
        for (std::size_t i = 0; i < 3; ++i) sq += s(i, 0) * s(i, 0);
        CHECK(std::abs(mean) <= 1e-12);
        CHECK(std::abs(std::sqrt(sq / 3) - 1.0) <= 1e-12);
        for (std::size_t i = 0; i < 3; ++i) CHECK(s(i, 1) == 0.0);
        CHECK(s.standardized());
    }

    TEST_CASE("idempotent") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto once = standardize(random_points(seed));
            const auto twice = standardize(once);
            for (std::size_t i = 0; i < once.values().size(); ++i)
                REQUIRE(twice.values()[i] == doctest::Approx(once.values()[i]).epsilon(1e-12));
        }
    }

    TEST_CASE("shape and value checks") {
        CHECK_THROWS_AS(standardize(DataMatrix(1, 2, {1, 2})), InvalidArgument);
        CHECK_THROWS_AS(DataMatrix(2, 2, {1, 2, 3}), InvalidArgument);
        CHECK_THROWS_AS(DataMatrix(1, 1, {std::nan("")}), InvalidArgument);
    }
}

TEST_SUITE("kmeans") {
    TEST_CASE("two blobs for any seed") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto a = kmeans(blobs(), 2, seed);
            CHECK(a.labels[0] == a.labels[1]);
            CHECK(a.labels[2] == a.labels[3]);
            CHECK(a.labels[0] != a.labels[2]);
            const auto& left = a.centroids[a.labels[0]];
            const auto& right = a.centroids[a.labels[2]];
            CHECK(left[0] == doctest::Approx(0.0));
            CHECK(left[1] == doctest::Approx(0.5));
            CHECK(right[0] == doctest::Approx(10.0));
            CHECK(right[1] == doctest::Approx(0.5));
            CHECK(a.objective_history.back() == doctest::Approx(1.0));
        }
    }

    TEST_CASE("k equal to n") {
        const auto a = kmeans(blobs(), 4, 3);
        CHECK(std::set<std::size_t>(a.labels.begin(), a.labels.end()).size() == 4);
        CHECK(a.objective_history.back() == 0.0);
    }

    TEST_CASE("duplicated rows share labels") {
        const DataMatrix d(6, 1, {0, 0, 5, 5, 9, 9});
        const auto a = kmeans(d, 3, 11);
        CHECK(a.labels[0] == a.labels[1]);
        CHECK(a.labels[2] == a.labels[3]);
        CHECK(a.labels[4] == a.labels[5]);
    }

    TEST_CASE("k bounds") {
        CHECK_THROWS_AS(kmeans(blobs(), 5, 1), InvalidArgument);
        CHECK_THROWS_AS(kmeans(blobs(), 1, 1), InvalidArgument);
    }

    TEST_CASE("random data: monotone objective, determinism, index bounds") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto d = random_points(seed);
            const std::size_t k = 2 + seed % 3;
            const auto a = kmeans(d, k, seed);
            REQUIRE_FALSE(a.objective_history.empty());
            for (std::size_t i = 1; i < a.objective_history.size(); ++i)
                REQUIRE(a.objective_history[i] <= a.objective_history[i - 1] + 1e-9);
            REQUIRE(kmeans(d, k, seed).labels == a.labels);
            for (auto l : a.labels) REQUIRE(l < k);
            const double s = silhouette(d, a);
            REQUIRE(s >= -1.0);
            REQUIRE(s <= 1.0);
        }
    }
}

TEST_SUITE("som") {
    TEST_CASE("two units split the blobs") {
        const auto a = som(blobs(), {1, 2, 200, 0.5, 0.0}, 5);
        CHECK(a.k == 2);
        CHECK(a.labels[0] == a.labels[1]);
        CHECK(a.labels[2] == a.labels[3]);
        CHECK(a.labels[0] != a.labels[2]);
    }

    TEST_CASE("no training still labels deterministically") {
        const SomParams p{2, 2, 0, 0.5, 0.0};
        const auto a = som(blobs(), p, 9);
        CHECK(a.labels == som(blobs(), p, 9).labels);
        for (auto l : a.labels) CHECK(l < a.k);
    }

    TEST_CASE("same seed, same labels") {
        const auto d = random_points(4);
        CHECK(som(d, {}, 13).labels == som(d, {}, 13).labels);
    }

    TEST_CASE("grid must hold two units") {
        CHECK_THROWS_AS(som(blobs(), {1, 1, 10, 0.5, 0.0}, 1), InvalidArgument);
        CHECK_THROWS_AS(som(blobs(), {0, 2, 10, 0.5, 0.0}, 1), InvalidArgument);
    }
}

TEST_SUITE("indices") {
    TEST_CASE("dunn on the blobs") {
        CHECK(dunn_index(blobs(), labelled({0, 0, 1, 1})) == 10.0);
    }

    TEST_CASE("dunn when one cluster spans the data") {
        const DataMatrix d(5, 2, {0, 0, 0, 1, 10, 0, 10, 1, 100, 0});
        // Blobs merged, far point alone: separation 90, diameter sqrt(101).
        CHECK(dunn_index(d, labelled({0, 0, 0, 0, 1})) == doctest::Approx(90.0 / std::sqrt(101.0)));
        // Far point inside the large cluster: diameter 100 dominates.
        CHECK(dunn_index(d, labelled({0, 0, 0, 1, 0})) < 1.0);
    }

    TEST_CASE("silhouette on the blobs") {
        const double expected = 1.0 - 2.0 / (10.0 + std::sqrt(101.0));
        const double s = silhouette(blobs(), labelled({0, 0, 1, 1}));
        CHECK(s == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(s - 0.900) <= 1e-3);
    }

    TEST_CASE("identical points with mixed labels") {
        CHECK(silhouette(DataMatrix(4, 1, {3, 3, 3, 3}), labelled({0, 1, 0, 1})) == 0.0);
    }

    TEST_CASE("invariant under scaling and relabeling") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto d = random_points(seed);
            const auto a = kmeans(d, 2, seed);
            auto flipped = a;
            for (auto& l : flipped.labels) l = 1 - l;
            for (double c : {0.01, 3.0, 1e4}) {
                const auto ds = scaled(d, c);
                REQUIRE(silhouette(ds, a) == doctest::Approx(silhouette(d, a)).epsilon(1e-9));
                try {
                    REQUIRE(dunn_index(ds, a) == doctest::Approx(dunn_index(d, a)).epsilon(1e-9));
                    REQUIRE(dunn_index(d, flipped) == dunn_index(d, a));
                    REQUIRE(dunn_index(d, a) > 0.0);
                } catch (const UndefinedIndexError&) {
                }
            }
            REQUIRE(silhouette(d, flipped) == doctest::Approx(silhouette(d, a)).epsilon(1e-12));
        }
    }

    TEST_CASE("undefined cases") {
        CHECK_THROWS_AS(dunn_index(blobs(), labelled({0, 0, 0, 0})), UndefinedIndexError);
        CHECK_THROWS_AS(silhouette(blobs(), labelled({1, 1, 1, 1})), UndefinedIndexError);
        CHECK_THROWS_AS(dunn_index(blobs(), labelled({0, 1, 2, 3})), UndefinedIndexError);
        CHECK(silhouette(blobs(), labelled({0, 1, 2, 3})) == 0.0);
        CHECK_THROWS_AS(silhouette(blobs(), labelled({0, 1})), InvalidArgument);
    }
}

TEST_SUITE("evaluate_subsets") {
    TEST_CASE("rows for every subset and algorithm") {
        const std::vector<NamedSubset> subsets{{"all", {"x", "y"}}, {"x_only", {"x"}}, {"again", {"x", "y"}}};
        EvaluationParams params;
        params.som = {1, 2, 200, 0.5, 0.0};
        const auto rows = evaluate_subsets(blob_table(), subsets, params);
        REQUIRE(rows.size() == 6);
        CHECK(rows[0].subset == "all");
        CHECK(rows[0].algorithm == "kmeans");
        CHECK(rows[1].algorithm == "som");
        CHECK(rows[2].feature_count == 1);
        for (const auto& r : rows) {
            if (r.subset == "x_only") continue;
            REQUIRE(r.dunn.has_value());
            REQUIRE(r.silhouette.has_value());
            CHECK(std::isfinite(*r.dunn));
            CHECK(std::isfinite(*r.silhouette));
        }
        // Standardizing both columns to unit spread makes within- and
        // between-blob gaps equal.
        CHECK(*rows[0].dunn == doctest::Approx(1.0));
        // On x alone the blobs collapse to two points each.
        CHECK_FALSE(rows[2].dunn.has_value());
        CHECK(*rows[2].silhouette == doctest::Approx(1.0));
        CHECK(rows[4].dunn == rows[0].dunn);
        CHECK(rows[4].silhouette == rows[0].silhouette);
    }

    TEST_CASE("bad subsets") {
        CHECK_THROWS_AS(evaluate_subsets(blob_table(), {{"none", {}}}, {}), InvalidArgument);
        CHECK_THROWS_AS(evaluate_subsets(blob_table(), {{"bad", {"z"}}}, {}), InvalidArgument);
    }
}
