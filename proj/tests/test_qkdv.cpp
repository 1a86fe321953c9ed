#include "helpers.hpp"
#include "qwk/qkdv.hpp"
#include "qwk/verify.hpp"
#include "qwk/weyl_oracle.hpp"

#include <doctest.h>

using namespace qwk;

namespace {

MultiPoly slot_poly(int m, const std::function<MultiPoly(const std::vector<MultiPoly>&)>& f) {
    auto names = slot_names(m);
    std::vector<MultiPoly> a;
    for (const auto& n : names) a.push_back(MultiPoly::variable(n, names));
    return f(a);
}

const SymbolTerm* find_term(const FourierSymbol& s, int grade, int slots) {
    for (const auto& t : s.terms)
        if (t.grade == grade && t.slots == slots) return &t;
    return nullptr;
}

// The nested bracket with the plain (unpruned) bracket at every step.
std::map<int, GaussRat> nested_plain(const std::vector<int>& d, int g) {
    FourierSymbol L = hamiltonian_density(d[0] - 1, g);
    for (std::size_t j = 1; j < d.size(); ++j)
        L = bracket(L, integrate_hamiltonian(hamiltonian_density(d[j], g)), BracketBudget{g, true});
    auto v = eval_string_point(L);
    for (int k = 0; k <= g; ++k) v.try_emplace(k, GaussRat());
    return v;
}

}  // namespace

TEST_SUITE("qkdv") {

TEST_CASE("low Hamiltonian densities") {
    auto hm1 = hamiltonian_density(-1);
    REQUIRE(hm1.terms.size() == 1);
    CHECK(hm1.terms[0].grade == 0);
    CHECK(hm1.terms[0].slots == 1);
    CHECK(hm1.terms[0].coeff == constant(1, slot_names(1)));

    auto h0 = hamiltonian_density(0);
    auto quad = find_term(h0, 0, 2);
    auto vac = find_term(h0, 1, 0);
    REQUIRE(quad);
    REQUIRE(vac);
    CHECK(quad->coeff == constant(1, slot_names(2)) * GaussRat(make_rat(1, 2)));
    CHECK(vac->coeff.constant_term() == GaussRat(make_rat(-1, 24)));
    CHECK(h0.terms.size() == 2);

    auto h1 = hamiltonian_density(1);
    auto cubic = find_term(h1, 0, 3);
    auto lin = find_term(h1, 1, 1);
    REQUIRE(cubic);
    REQUIRE(lin);
    CHECK(cubic->coeff == constant(1, slot_names(3)) * GaussRat(make_rat(1, 6)));
    CHECK(lin->coeff == slot_poly(1, [](auto& a) { return (GaussRat(2) * a[0] * a[0] - constant(1, slot_names(1))) *
                                                          GaussRat(make_rat(1, 24)); }));
}

TEST_CASE("grade cap of the densities") {
    for (int d = 0; d <= 5; ++d) {
        auto full = hamiltonian_density(d);
        auto low = hamiltonian_density(d, 1);
        for (const auto& t : low.terms) CHECK(t.grade <= 1);
        FourierSymbol kept{SymbolKind::Density, {}};
        for (const auto& t : full.terms)
            if (t.grade <= 1) kept.terms.push_back(t);
        CHECK(symbols_equal(kept, low));
    }
}

TEST_CASE("integration flips the kind once") {
    auto h = integrate_hamiltonian(hamiltonian_density(0));
    CHECK(h.kind == SymbolKind::Integrated);
    CHECK(integrate_hamiltonian(hamiltonian_density(-1)).terms.size() == 1);
    CHECK_THROWS_AS(integrate_hamiltonian(h), std::invalid_argument);
}

TEST_CASE("bracket of u0 with the integrated quadratic Hamiltonian") {
    auto b = bracket(hamiltonian_density(-1), integrate_hamiltonian(hamiltonian_density(0)), BracketBudget{0, true});
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms[0].grade == 0);
    CHECK(b.terms[0].coeff == slot_poly(1, [](auto& a) { return a[0]; }));
    CHECK(eval_string_point(b)[0] == -GaussRat::i());
}

TEST_CASE("bracket with the integrated quadratic Hamiltonian is the x derivative over i") {
    std::mt19937_64 rng(17);
    auto h0 = integrate_hamiltonian(hamiltonian_density(0));
    for (int k = 0; k < 40; ++k) {
        auto L = weyl::random_symbol(rng, SymbolKind::Density, 4);
        auto b = bracket(L, h0, BracketBudget{4, true});
        FourierSymbol want = d_x(L);
        for (auto& t : want.terms) t.coeff *= -GaussRat::i();
        CHECK(symbols_equal(b, want));
    }
}

TEST_CASE("bracket rejects wrong kinds and budgets") {
    auto h = hamiltonian_density(0);
    CHECK_THROWS_AS(bracket(h, h, BracketBudget{}), std::invalid_argument);
    CHECK_THROWS_AS(bracket(integrate_hamiltonian(h), integrate_hamiltonian(h), BracketBudget{}), std::invalid_argument);
    CHECK_THROWS_AS(bracket(h, integrate_hamiltonian(h), BracketBudget{-1, true}), std::invalid_argument);
}

TEST_CASE("nested bracket examples") {
    auto one = nested_bracket({1}, 1);
    CHECK(one[1] == GaussRat(make_rat(-1, 24)));
    auto two = nested_bracket({0, 0}, 0);
    CHECK(two[0] == -GaussRat::i());
    auto three = nested_bracket({3}, 1);
    CHECK(three[1] == GaussRat(make_rat(-1, 24)));
}

TEST_CASE("pruned and plain nested brackets agree") {
    std::vector<std::pair<std::vector<int>, int>> cases{
        {{0, 0}, 0}, {{1, 2}, 1}, {{0, 3}, 1}, {{2, 1, 1}, 1}, {{3, 0, 2}, 1}, {{1, 1, 1}, 2}, {{4, 2}, 2}, {{0, 5}, 2}};
    for (const auto& [d, g] : cases) {
        auto pruned = nested_bracket(d, g);
        auto plain = nested_plain(d, g);
        for (int k = 0; k <= g; ++k) CHECK(pruned[k] == plain[k]);
    }
}

TEST_CASE("evaluation bracket keeps the string point value") {
    auto L = hamiltonian_density(2, 2);
    auto R = integrate_hamiltonian(hamiltonian_density(3, 2));
    auto plain = bracket(L, R, BracketBudget{2, true});
    auto pruned = bracket_for_evaluation(L, R, BracketBudget{2, true}, 0);
    CHECK(nonzero(eval_string_point(plain)) == nonzero(eval_string_point(pruned)));
    CHECK(pruned.terms.size() <= plain.terms.size());
    CHECK_THROWS(bracket_for_evaluation(L, R, BracketBudget{2, true}, -1));
}

TEST_CASE("string lemma for the densities") {
    for (int d = 0; d <= 6; ++d) CHECK(symbols_equal(d_dp0(hamiltonian_density(d)), hamiltonian_density(d - 1)));
}

TEST_CASE("tau symmetry and vanishing zero modes") {
    auto r = verify_tau_structure(4, 3);
    CHECK(r.comparisons.size() == 35);
    if (auto f = r.first_failure()) FAIL(f->key);
}

TEST_CASE("normal ordering of a single swap") {
    weyl::NormalOrder no;
    const auto& out = no.of({2, -2});
    REQUIRE(out.size() == 2);
    CHECK(out.at({0, {-2, 2}}) == 1);
    CHECK(out.at({1, {}}) == 2);
    CHECK(no.of({-1, 3}).size() == 1);
    CHECK(no.of({1, 0, -1}).at({1, {0}}) == 1);
}

TEST_CASE("Weyl commutator reproduces the linear example") {
    const int M = 4;
    auto L = hamiltonian_density(-1);
    auto R = integrate_hamiltonian(hamiltonian_density(0));
    weyl::NormalOrder no;
    auto c = weyl::commutator(weyl::sample(L, M), weyl::sample(R, M), no);
    for (int a = -M; a <= M; ++a) {
        auto it = c.find({0, {a}});
        GaussRat v = it == c.end() ? GaussRat() : it->second;
        CHECK(v == GaussRat(a));
    }
}

TEST_CASE("bracket against the truncated Weyl algebra") {
    auto r = verify_bracket_oracle(20240601, 60, 5);
    CHECK(r.comparisons.size() == 60);
    if (auto f = r.first_failure()) FAIL(f->key << ": " << f->lhs << " vs " << f->rhs);
}

TEST_CASE("bracket of Hamiltonians against the truncated Weyl algebra") {
    const int M = 4;
    weyl::NormalOrder no;
    for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = 0; d2 <= 1; ++d2) {
            auto L = hamiltonian_density(d1);
            auto R = integrate_hamiltonian(hamiltonian_density(d2));
            auto engine = bracket(L, R, BracketBudget{6, true});
            auto oracle = weyl::commutator(weyl::sample(L, M), weyl::sample(R, M), no);
            CHECK(weyl::compare(engine, oracle, M, 4, 6).empty());
        }
}

TEST_CASE("the finite-mode comparison detects a perturbed bracket") {
    const int M = 4;
    std::mt19937_64 rng(99);
    weyl::NormalOrder no;
    auto L = weyl::random_symbol(rng, SymbolKind::Density, 2);
    auto R = integrate_hamiltonian(hamiltonian_density(1));
    auto engine = bracket(L, R, BracketBudget{6, true});
    auto oracle = weyl::commutator(weyl::sample(L, M), weyl::sample(R, M), no);
    REQUIRE(weyl::compare(engine, oracle, M, 4, 6).empty());
    REQUIRE(!engine.terms.empty());
    auto bad = engine;
    auto names = slot_names(bad.terms[0].slots);
    bad.terms[0].coeff += MultiPoly::constant(GaussRat(1), names);
    CHECK(!weyl::compare(bad, oracle, M, 4, 6).empty());
}

}
