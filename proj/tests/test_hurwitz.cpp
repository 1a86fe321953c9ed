#include "helpers.hpp"
#include "qwk/hurwitz.hpp"
#include "qwk/special.hpp"
#include "qwk/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace qwk;

namespace {

std::vector<std::string> m_names(int n) {
    std::vector<std::string> out;
    for (int k = 1; k <= n; ++k) out.push_back("m" + std::to_string(k));
    return out;
}

std::vector<int> cycle_type(const std::vector<int>& p) {
    std::vector<int> out;
    std::vector<bool> seen(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        for (std::size_t y = x; !seen[y]; y = p[y]) seen[y] = true, ++len;
        out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Enumerates every tuple of r transpositions and applies them to the d-cycle one at a time.
Rat brute_count(int d, int r, std::vector<int> mu, bool left_to_right) {
    std::sort(mu.begin(), mu.end());
    std::vector<std::pair<int, int>> ts;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) ts.emplace_back(a, b);
    if (ts.empty() && r > 0) return Rat(0);
    std::vector<int> s0(d);
    for (int x = 0; x < d; ++x) s0[x] = (x + 1) % d;
    long hits = 0;
    std::vector<std::size_t> idx(r, 0);
    for (;;) {
        std::vector<int> p = s0;
        for (int k = 0; k < r; ++k) {
            auto [a, b] = ts[idx[k]];
            std::vector<int> t(d);
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[a], t[b]);
            std::vector<int> q(d);
            for (int x = 0; x < d; ++x) q[x] = left_to_right ? t[p[x]] : p[t[x]];
            p = q;
        }
        hits += cycle_type(p) == mu;
        int k = r - 1;
        while (k >= 0 && ++idx[k] == ts.size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return Rat(hits) / d;
}

}  // namespace

TEST_SUITE("hurwitz") {

TEST_CASE("partition parsing") {
    auto mu = parse_partition("2,1,1");
    CHECK(mu.parts == std::vector<int>{2, 1, 1});
    CHECK(mu.degree() == 4);
    CHECK_THROWS(parse_partition(""));
    CHECK_THROWS(parse_partition("2,,1"));
    CHECK_THROWS(parse_partition("2,0"));
    CHECK_THROWS(parse_partition("x"));
}

TEST_CASE("closed form examples") {
    CHECK(one_part_polynomial(0, 2).poly == constant(1, m_names(2)));
    auto v3 = m_names(3);
    CHECK(one_part_polynomial(0, 3).poly == (var("m1", v3) + var("m2", v3) + var("m3", v3)) * GaussRat(2));
    auto h = one_part_polynomial(1, 1);
    auto m = var("m1", m_names(1));
    CHECK(h.poly == m * (m * m - constant(1, m_names(1))) * GaussRat(make_rat(1, 12)));
    CHECK(evaluate(h, Partition{{3}}) == 2);
    CHECK_THROWS(one_part_polynomial(0, 1));
    CHECK(one_part_number(0, Partition{{2}}) == Q("1/2"));
    CHECK(one_part_number(1, Partition{{3}}) == 2);
}

TEST_CASE("closed form is divisible by the degree") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 4; ++n) {
            if (2 * g - 2 + n < 1) continue;
            auto h = one_part_polynomial(g, n);
            auto names = m_names(n);
            LinearForm minus_rest;
            for (int k = 1; k < n; ++k) minus_rest.terms.push_back({names[k], GaussRat(-1)});
            CHECK(substitute_linear(h.poly, names[0], minus_rest).is_zero());
        }
}

TEST_CASE("correlator examples") {
    CHECK(hurwitz_correlator({0, 0, 0}, 0) == 1);
    CHECK(hurwitz_correlator({2}, 1) == Q("1/24"));
    CHECK(hurwitz_correlator({1, 2}, 1) == Q("1/24"));
    CHECK(hurwitz_correlator_tau0({3}, 1) == Q("1/24"));
    CHECK(hurwitz_correlator_tau0({0, 0}, 0) == 1);
    CHECK(hurwitz_correlator_tau0({7}, 2) == Q("1/1920"));
    CHECK_THROWS(hurwitz_correlator({1}, 0));
}

TEST_CASE("correlators are signed coefficients of the series, zero outside the band") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n) {
            int power = 2 * g - 3 + n;
            if (power < 0) continue;
            auto names = m_names(n);
            std::vector<MultiPoly> args;
            MultiPoly sum(names);
            for (const auto& v : names) {
                args.push_back(var(v, names));
                sum += args.back();
            }
            auto series = s_product_coefficient(args, names, g) * poly_pow(sum, power);
            std::vector<int> d(n, 0);
            for (;;) {
                int s = std::accumulate(d.begin(), d.end(), 0);
                if (s <= 12 && std::is_sorted(d.begin(), d.end())) {
                    Rat raw = series.coeff(Exponents(d.begin(), d.end())).re();
                    int gap = 4 * g - 3 + n - s;
                    Rat want = gap % 2 == 0 && (gap / 2) % 2 ? Rat(-raw) : raw;
                    if (s < 2 * g - 3 + n || s > 4 * g - 3 + n || (s - n) % 2 == 0) CHECK(raw == 0);
                    CHECK(hurwitz_correlator(d, g) == want);
                }
                int k = n - 1;
                while (k >= 0 && ++d[k] > 12) d[k--] = 0;
                if (k < 0) break;
            }
        }
}

TEST_CASE("string equation for Hurwitz correlators") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n) {
            if (2 * g - 3 + n < 0) continue;
            std::vector<int> d(n, 0);
            for (;;) {
                if (std::is_sorted(d.begin(), d.end()) && std::accumulate(d.begin(), d.end(), 0) <= 4 * g + n) {
                    Rat rhs(0);
                    for (int i = 0; i < n; ++i)
                        if (d[i] > 0) {
                            auto e = d;
                            --e[i];
                            rhs += hurwitz_correlator(e, g);
                        }
                    CHECK(hurwitz_correlator_tau0(d, g) == rhs);
                }
                int k = n - 1;
                while (k >= 0 && ++d[k] > 4 * g + n) d[k--] = 0;
                if (k < 0) break;
            }
        }
}

TEST_CASE("factorization count examples") {
    CHECK(factorization_count(0, Partition{{2}}) == Q("1/2"));
    CHECK(factorization_count(0, Partition{{1, 1}}) == Q("1/2"));
    CHECK(factorization_count(1, Partition{{3}}) == brute_count(3, 2, {3}, true));
    CHECK_THROWS(factorization_count(0, Partition{{4, 3}}, ProductOrder::LeftToRight, 6));
}

TEST_CASE("factorization counts against direct enumeration") {
    std::vector<std::vector<int>> parts{{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}, {4}, {3, 1}, {2, 2}, {2, 1, 1}};
    for (const auto& mu : parts) {
        int d = std::accumulate(mu.begin(), mu.end(), 0);
        int n = static_cast<int>(mu.size());
        for (int g = 0; g <= 1; ++g) {
            int r = 2 * g - 1 + n;
            if (r < 0 || r > 4) continue;
            CHECK(factorization_count(g, Partition{mu}, ProductOrder::LeftToRight) == brute_count(d, r, mu, true));
            CHECK(factorization_count(g, Partition{mu}, ProductOrder::RightToLeft) == brute_count(d, r, mu, false));
        }
    }
}

TEST_CASE("automorphism factor") {
    CHECK(aut_factor(Partition{{1, 1}}) == 2);
    CHECK(aut_factor(Partition{{2, 3}}) == 1);
    CHECK(aut_factor(Partition{{2, 2, 2}}) == 6);
}

TEST_CASE("closed form equals aut times count for small degrees") {
    auto r = verify_hurwitz_oracle(5, 2);
    CHECK(r.comparisons.size() > 100);
    if (auto f = r.first_failure()) FAIL(f->key << ": " << f->lhs << " vs " << f->rhs);
}

}
