#include <doctest.h>

#include <softsel/error.hpp>
#include <softsel/fixtures.hpp>
#include <softsel/roughset.hpp>
#include <softsel/softset.hpp>

#include "oracles/table_oracle.hpp"

#include <algorithm>
#include <numeric>

using namespace softsel;
using namespace softsel::roughset;
using tabular::CategoricalTable;

namespace {

CategoricalTable with_columns(const std::vector<std::vector<std::string>>& columns) {
    std::vector<std::string> objects, attributes;
    for (std::size_t u = 0; u < columns[0].size(); ++u) objects.push_back("u" + std::to_string(u));
    for (std::size_t a = 0; a < columns.size(); ++a) attributes.push_back("c" + std::to_string(a));
    std::vector<std::vector<std::string>> rows(objects.size());
    for (std::size_t u = 0; u < objects.size(); ++u)
        for (const auto& col : columns) rows[u].push_back(col[u]);
    return tabular::categorical_from_labels(objects, attributes, rows);
}

AttributeSet all_of(const CategoricalTable& t) {
    AttributeSet a(t.attribute_count());
    std::iota(a.begin(), a.end(), std::size_t{0});
    return a;
}

// Brute-force |POS_B(y)|: objects whose B-class has a single y value.
std::size_t brute_positive(const CategoricalTable& t, const AttributeSet& b, std::size_t y) {
    std::size_t count = 0;
    for (std::size_t u = 0; u < t.object_count(); ++u) {
        bool consistent = true;
        for (std::size_t v = 0; v < t.object_count() && consistent; ++v) {
            bool same = true;
            for (auto a : b) same = same && t.code(u, a) == t.code(v, a);
            if (same && t.code(u, y) != t.code(v, y)) consistent = false;
        }
        count += consistent;
    }
    return count;
}

}  // namespace

TEST_SUITE("dependency") {
    TEST_CASE("positive region examples") {
        const auto t = fixtures::shapes_table();
        for (std::size_t y = 0; y < 4; ++y) {
            CHECK(positive_region(t, all_of(t), y).size() == 8);
            CHECK(positive_region(t, {}, y).empty());
            CHECK(positive_region(t, {y}, y).size() == 8);
        }
        CHECK_THROWS_AS(positive_region(t, {0}, 7), InvalidArgument);
        CHECK_THROWS_AS(positive_region(t, {9}, 0), InvalidArgument);
    }

    TEST_CASE("mean dependency examples") {
        const auto t = fixtures::shapes_table();
        CHECK(mean_dependency(t, all_of(t)) == 1.0);
        CHECK(mean_dependency(t, {}) == 0.0);
        const auto rec = dependency(t, {0, 3});
        CHECK(rec.gamma.size() == 4);
        Ratio sum{0, 1};
        std::uint64_t num = 0;
        for (const auto& g : rec.gamma) num += g.numerator;
        sum = {num, 32};
        CHECK(rec.mean == sum);
    }

    TEST_CASE("positive region agrees with brute force; mean is monotone") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto t = oracle::random_table(seed);
            const auto m = t.attribute_count();
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                AttributeSet b;
                for (std::size_t a = 0; a < m; ++a)
                    if (mask & (1u << a)) b.push_back(a);
                for (std::size_t y = 0; y < m; ++y) REQUIRE(positive_region(t, b, y).size() == brute_positive(t, b, y));
                const auto base = dependency(t, b).mean;
                for (std::size_t x = 0; x < m; ++x) {
                    if (mask & (1u << x)) continue;
                    auto bigger = b;
                    bigger.push_back(x);
                    std::sort(bigger.begin(), bigger.end());
                    REQUIRE_FALSE(dependency(t, bigger).mean < base);
                }
            }
        }
    }
}

TEST_SUITE("relative dependency") {
    TEST_CASE("shapes table") {
        const auto t = fixtures::shapes_table();
        CHECK(relative_dependency(t, all_of(t), 2) == Ratio{8, 8});
        CHECK(relative_dependency(t, all_of(t), 0) == Ratio{7, 8});
        CHECK(relative_dependency(t, all_of(t), 0).value() == doctest::Approx(0.875));
        CHECK_THROWS_AS(relative_dependency(t, {0, 1}, 3), InvalidArgument);
    }

    TEST_CASE("never above one") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto t = oracle::random_table(seed);
            for (std::size_t a = 0; a < t.attribute_count(); ++a) {
                const auto r = relative_dependency(t, all_of(t), a);
                REQUIRE(r.numerator <= r.denominator);
            }
        }
    }
}

TEST_SUITE("usqr") {
    TEST_CASE("shapes table reaches full dependency") {
        const auto t = fixtures::shapes_table();
        const auto r = usqr(t);
        CHECK(mean_dependency(t, r.reduct) == 1.0);
        CHECK(softset::tuple_cardinality(t, r.reduct) == 8);
        CHECK(r.method == "usqr");
        for (const auto& round : r.rounds)
            for (const auto& c : round.candidates) CHECK(c.dependency.has_value());
    }

    TEST_CASE("single attribute") {
        CHECK(usqr(with_columns({{"a", "b", "a"}})).reduct == AttributeSet{0});
    }

    TEST_CASE("duplicate column is never added twice") {
        const auto t = with_columns({{"a", "b", "c", "a"}, {"a", "b", "c", "a"}, {"x", "x", "y", "y"}});
        const auto r = usqr(t);
        CHECK_FALSE((std::count(r.reduct.begin(), r.reduct.end(), 0) && std::count(r.reduct.begin(), r.reduct.end(), 1)));
        CHECK(softset::tuple_cardinality(t, r.reduct) == 4);
    }
}

TEST_SUITE("urr") {
    TEST_CASE("shapes table drops only a3") {
        const auto r = urr(fixtures::shapes_table());
        CHECK(r.reduct == AttributeSet{0, 1, 3});
        CHECK(r.method == "urr");
    }

    TEST_CASE("all-distinct single column is kept") {
        CHECK(urr(with_columns({{"a", "b", "c"}})).reduct == AttributeSet{0});
    }

    TEST_CASE("exactly one of two duplicate columns survives") {
        const auto t = with_columns({{"a", "b", "c", "a"}, {"a", "b", "c", "a"}, {"x", "x", "y", "y"}});
        const auto r = urr(t);
        CHECK(r.reduct == AttributeSet{1, 2});
    }
}

TEST_CASE("all three methods agree on validity over random tables") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto t = oracle::random_table(seed);
        const auto target = softset::tuple_cardinality(t, all_of(t));
        for (const auto& r : {usqr(t), urr(t), softset::ssusqr(t)}) {
            INFO(r.method << " seed " << seed);
            REQUIRE(softset::tuple_cardinality(t, r.reduct) == target);
            REQUIRE(r.target_cardinality == target);
        }
        CHECK(usqr(t).reduct == usqr(t).reduct);
        CHECK(urr(t).reduct == urr(t).reduct);
    }
}
