#include "helpers.hpp"
#include "qwk/qkdv.hpp"
#include "qwk/symbols.hpp"
#include "qwk/weyl_oracle.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace qwk;

namespace {

FourierSymbol density(std::vector<SymbolTerm> terms) { return FourierSymbol{SymbolKind::Density, std::move(terms)}; }

MultiPoly slot_poly(int m, const std::function<MultiPoly(const std::vector<MultiPoly>&)>& f) {
    auto names = slot_names(m);
    std::vector<MultiPoly> a;
    for (const auto& n : names) a.push_back(MultiPoly::variable(n, names));
    return f(a);
}

FourierSymbol u0() { return density({make_term(0, 1, constant(1, slot_names(1)))}); }

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("symmetrize examples") {
    auto sq = density({make_term(0, 2, slot_poly(2, [](auto& a) { return a[0] * a[0]; }))});
    auto want = density({make_term(0, 2, slot_poly(2, [](auto& a) { return (a[0] * a[0] + a[1] * a[1]) * GaussRat(make_rat(1, 2)); }))});
    auto s = symmetrize(sq);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].coeff == want.terms[0].coeff);
    CHECK(symbols_equal(sq, want));

    auto prod = density({make_term(0, 2, slot_poly(2, [](auto& a) { return a[0] * a[1]; }))});
    CHECK(symmetrize(prod).terms[0].coeff == prod.terms[0].coeff);

    auto anti = density({make_term(0, 2, slot_poly(2, [](auto& a) { return a[0] - a[1]; }))});
    CHECK(symmetrize(anti).terms.empty());
}

TEST_CASE("symmetrize is idempotent and invisible to the string point") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        auto s = weyl::random_symbol(rng, SymbolKind::Density, 3);
        auto once = symmetrize(s);
        CHECK(symbols_equal(symmetrize(once), once));
        CHECK(symbols_equal(once, s));
        CHECK(nonzero(eval_string_point(once)) == nonzero(eval_string_point(s)));
    }
}

TEST_CASE("x derivative") {
    auto d = d_x(u0());
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].coeff == slot_poly(1, [](auto& a) { return a[0] * GaussRat::i(); }));
    auto dd = d_x(d);
    CHECK(dd.terms[0].coeff == slot_poly(1, [](auto& a) { return -(a[0] * a[0]); }));
    auto c = density({make_term(1, 0, constant(5, {}))});
    CHECK(d_x(c).terms.empty());
    CHECK_THROWS(d_x(integrate_hamiltonian(u0())));
}

TEST_CASE("zero mode derivative") {
    CHECK(symbols_equal(d_dp0(hamiltonian_density(0)), u0()));
    auto c = density({make_term(1, 0, constant(5, {}))});
    CHECK(d_dp0(c).terms.empty());
    auto bil = density({make_term(0, 2, slot_poly(2, [](auto& a) { return a[0] * a[1] * GaussRat(make_rat(1, 2)); }))});
    CHECK(d_dp0(bil).terms.empty());
}

TEST_CASE("string point evaluation") {
    for (auto [g, v] : eval_string_point(u0())) CHECK(v == GaussRat());
    auto lin = density({make_term(0, 1, slot_poly(1, [](auto& a) { return a[0]; }))});
    CHECK(eval_string_point(lin)[0] == -GaussRat::i());
    auto h0 = eval_string_point(hamiltonian_density(0));
    CHECK(h0[1] == GaussRat(make_rat(-1, 24)));
    CHECK(h0[0] == GaussRat());
}

TEST_CASE("differential polynomial correspondence") {
    DiffPoly one_u0;
    one_u0.add(0, {0}, GaussRat(1));
    CHECK(to_diff_poly(u0()) == one_u0);
    CHECK(symbols_equal(from_diff_poly(one_u0), u0()));

    DiffPoly u1u1;
    u1u1.add(0, {1, 1}, GaussRat(1));
    auto s = from_diff_poly(u1u1);
    REQUIRE(s.terms.size() == 1);
    CHECK(symbols_equal(s, density({make_term(0, 2, slot_poly(2, [](auto& a) { return -(a[0] * a[1]); }))})));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ord(0, 3), len(0, 3), grade(0, 2), coef(-5, 5);
    for (int k = 0; k < 50; ++k) {
        DiffPoly d;
        for (int t = 0; t < 3; ++t) {
            std::vector<int> o(len(rng));
            for (auto& x : o) x = ord(rng);
            std::sort(o.begin(), o.end());
            d.add(grade(rng), o, GaussRat(Rat(coef(rng)), Rat(coef(rng))));
        }
        CHECK(to_diff_poly(from_diff_poly(d)) == d);
    }
}

TEST_CASE("x derivative commutes with the correspondence") {
    DiffPoly d;
    d.add(0, {0, 2}, GaussRat(3));
    d.add(1, {1}, GaussRat(make_rat(1, 2)));
    CHECK(symbols_equal(from_diff_poly(diff_poly_dx(d)), d_x(from_diff_poly(d))));
}

TEST_CASE("variational derivative examples") {
    DiffPoly half_sq;
    half_sq.add(0, {0, 0}, GaussRat(make_rat(1, 2)));
    CHECK(symbols_equal(variational_derivative(half_sq), u0()));
    CHECK(symbols_equal(mode_derivative(from_diff_poly(half_sq)), u0()));

    DiffPoly lin;
    lin.add(0, {0}, GaussRat(1));
    DiffPoly one;
    one.add(0, {}, GaussRat(1));
    CHECK(variational_derivative_u(lin) == one);
    CHECK(symbols_equal(variational_derivative(lin), density({make_term(0, 0, constant(1, {}))})));

    CHECK(variational_derivative(DiffPoly{}).terms.empty());
}

TEST_CASE("json output") {
    auto j = nlohmann::json::parse(to_json(hamiltonian_density(0)));
    CHECK(j["kind"] == "density");
    CHECK(j["terms"].size() == 2);
}

}
