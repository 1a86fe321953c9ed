#include "helpers.hpp"
#include "qwk/correlators.hpp"
#include "qwk/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace qwk;

TEST_SUITE("correlators") {

TEST_CASE("tau0 route examples") {
    CHECK(correlator_tau0({0, 0}, 0) == 1);
    CHECK(correlator_tau0({1}, 1) == Q("1/24"));
    CHECK(correlator_tau0({3}, 1) == Q("1/24"));
    CHECK(correlator_tau0({7}, 2) == Q("1/1920"));
    CHECK_THROWS_AS(correlator_tau0({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(correlator_tau0({-1}, 1), std::invalid_argument);
}

TEST_CASE("first terms of the series") {
    CHECK(correlator({2}, 1) == Q("1/24"));
    CHECK(correlator({2}, 2) == Q("7/5760"));
    CHECK(correlator({1, 2}, 1) == Q("1/24"));
    CHECK(correlator({0, 3}, 2) == Q("7/5760"));
    CHECK(correlator({1, 2}, 2) == Q("7/1920"));
    CHECK(correlator({6}, 2) == Q("1/1920"));
    CHECK(correlator({4}, 2) == Q("1/576"));
    CHECK(correlator({1, 4}, 2) == Q("1/192"));
    CHECK(correlator({0, 7}, 2) == Q("1/1920"));
}

TEST_CASE("tau1 tau6 in genus two follows from string and dilaton") {
    Rat v = correlator({1, 6}, 2);
    CHECK(v == Q("1/640"));
    CHECK(v == 3 * correlator({6}, 2));
    CHECK(correlator_tau0({1, 7}, 2) == correlator({0, 7}, 2) + v);
    CHECK(correlator_tau0({1, 7}, 2) == Q("1/480"));
}

TEST_CASE("constant terms") {
    CHECK(constant_term(0) == 0);
    CHECK(constant_term(2) == correlator({1}, 2) / 2);
    CHECK(correlator({}, 2) == constant_term(2));
    CHECK_THROWS_AS(constant_term(1), std::domain_error);
    CHECK_THROWS_AS(correlator({}, 1), std::domain_error);
}

TEST_CASE("level predicate") {
    CHECK(vanishes_by_level({5}, 1, 0));
    CHECK(vanishes_by_level({3}, 1, 0));
    CHECK_FALSE(vanishes_by_level({1, 2}, 1, 0));
    CHECK_THROWS(vanishes_by_level({1}, 1, 2));
}

TEST_CASE("tables") {
    auto t = correlator_table(1, 2, 3);
    CHECK(t.values.at(make_key({2}, 1)) == Q("1/24"));
    CHECK(t.values.at(make_key({3, 0}, 1)) == Q("1/24"));
    CHECK(t.values.count(CorrelatorKey{1, {}}) == 0);

    auto z = correlator_table(0, 3, 0);
    CHECK(z.values.size() == 4);
    for (const auto& [k, v] : z.values) CHECK(v == (k.d.size() == 3 ? 1 : 0));

    auto e = correlator_table(0, 0, 0);
    CHECK(e.values.size() == 1);
    CHECK_THROWS(correlator_table(-1, 1, 1));

    auto serial = correlator_table(2, 3, 6, 1);
    auto parallel = correlator_table(2, 3, 6, 4);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("multisets are ordered by sum then lexicographically") {
    auto m = multisets(0, 2, 2);
    std::vector<std::vector<int>> want{{}, {0}, {0, 0}, {0, 1}, {1}, {0, 2}, {1, 1}, {2}};
    CHECK(m == want);
    CHECK(multisets(2, 2, 0) == std::vector<std::vector<int>>{{0, 0}});
}

TEST_CASE("string equation on the grid") {
    auto r = verify_string(GridBounds{2, 3, -1}, 1);
    CHECK(r.comparisons.size() > 150);
    if (auto f = r.first_failure()) FAIL(f->key << ": " << f->lhs << " vs " << f->rhs);
}

TEST_CASE("level structure on the grid") {
    auto r = verify_levels(GridBounds{2, 3, -1}, 1);
    CHECK(r.comparisons.size() > 100);
    if (auto f = r.first_failure()) FAIL(f->key << ": " << f->lhs);
}

TEST_CASE("nonzero correlators only inside the level band") {
    for (int g = 0; g <= 2; ++g)
        for (const auto& d : multisets(1, 3, 4 * g + 3)) {
            int n = static_cast<int>(d.size());
            int s = std::accumulate(d.begin(), d.end(), 0);
            if (correlator(d, g) != 0) {
                CHECK(s >= 2 * g - 3 + n);
                CHECK(s <= 4 * g - 3 + n);
                CHECK((s - n) % 2 != 0);
            }
        }
}

TEST_CASE("dilaton equation") {
    for (int g = 0; g <= 2; ++g)
        for (const auto& d : multisets(1, 2, 4 * g + 2)) {
            auto with = d;
            with.push_back(1);
            int n = static_cast<int>(d.size());
            CHECK(correlator(with, g) == Rat(2 * g - 2 + n) * correlator(d, g));
        }
}

TEST_CASE("correlators are symmetric in their insertions") {
    std::vector<std::pair<std::vector<int>, int>> cases{{{0, 1, 3}, 1}, {{2, 1, 4}, 2}, {{3, 0, 2}, 2}, {{1, 2}, 1}};
    for (auto [d, g] : cases) {
        std::sort(d.begin(), d.end());
        Rat first;
        bool have = false;
        do {
            CorrelatorEngine fresh;
            Rat v = fresh.correlator(d, g);
            if (!have) first = v, have = true;
            CHECK(v == first);
        } while (std::next_permutation(d.begin(), d.end()));
    }
}

TEST_CASE("engine equals the Hurwitz closed form") {
    auto r = verify_main_theorem(GridBounds{2, 3, -1}, 1);
    CHECK(r.comparisons.size() > 150);
    if (auto f = r.first_failure()) FAIL(f->key << ": " << f->lhs << " vs " << f->rhs);
}

}
