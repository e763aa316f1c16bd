#include <doctest.h>

#include "recsel/metrics.hpp"
#include "recsel/rng.hpp"

using namespace recsel;

namespace {

// O(m^2) double-sum definition of the Gini coefficient.
double gini_oracle(const std::vector<std::int64_t>& counts) {
    const double m = static_cast<double>(counts.size());
    double total = 0.0;
    for (const auto c : counts) total += static_cast<double>(c);
    const double mean = total / m;
    double acc = 0.0;
    for (const auto a : counts) {
        for (const auto b : counts) {
            acc += std::abs(static_cast<double>(a) - static_cast<double>(b));
        }
    }
    return acc / (2.0 * m * m * mean);
}

}  // namespace

TEST_CASE("relevant_items thresholds inclusively") {
    std::vector<std::pair<ItemId, double>> ratings = {
        {1, 4.0}, {2, 3.9}, {3, 5.0}, {4, 1.0}};
    const auto rel = relevant_items(ratings, 4.0);
    CHECK(rel == std::set<ItemId>{1, 3});
    const auto rel7 = relevant_items({{9, 7.0}, {8, 6.0}}, 7.0);
    CHECK(rel7 == std::set<ItemId>{9});
    CHECK(relevant_items(ratings, 6.0).empty());
}

TEST_CASE("f1 hand example 2/3") {
    const std::set<ItemId> rec = {1, 2, 3};
    const std::set<ItemId> rel = {2, 3, 4};
    CHECK(f1_score(rec, rel) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("f1 edge cases") {
    const std::set<ItemId> rec = {1, 2};
    CHECK(f1_score(rec, rec) == 1.0);
    CHECK(f1_score(rec, {7, 8}) == 0.0);
    CHECK(f1_score(rec, {}) == 0.0);
    CHECK_THROWS_AS(f1_score({}, rec), std::invalid_argument);
}

TEST_CASE("gini diversity tabulated values") {
    CHECK(gini_diversity({3, 3, 3, 3}) == doctest::Approx(1.0));
    CHECK(gini_diversity({1, 1, 2}) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    // all recommendations on one item among m = 5
    CHECK(gini_diversity({9, 0, 0, 0, 0}) ==
          doctest::Approx(1.0 - 4.0 / 5.0).epsilon(1e-15));
}

TEST_CASE("gini matches the double-sum oracle on random counts") {
    Xoshiro256StarStar rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.below(40);
        std::vector<std::int64_t> counts(m);
        std::int64_t total = 0;
        for (auto& c : counts) {
            c = static_cast<std::int64_t>(rng.below(10));
            total += c;
        }
        if (total == 0) counts[0] = 1;
        const double expect = 1.0 - gini_oracle(counts);
        CHECK(gini_diversity(counts) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(gini_diversity(counts) >= -1e-12);
        CHECK(gini_diversity(counts) <= 1.0 + 1e-12);
    }
}

TEST_CASE("gini rejects degenerate input") {
    CHECK_THROWS_AS(gini_diversity({}), std::invalid_argument);
    CHECK_THROWS_AS(gini_diversity({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(gini_diversity({-1, 2}), std::invalid_argument);
}
