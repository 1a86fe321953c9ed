#include "qwk/verify.hpp"

#include "qwk/correlators.hpp"
#include "qwk/hurwitz.hpp"
#include "qwk/identities.hpp"
#include "qwk/parallel.hpp"
#include "qwk/qkdv.hpp"
#include "qwk/special.hpp"
#include "qwk/weyl_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace qwk {

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const Comparison* VerifyReport::first_failure() const {
    for (const auto& c : comparisons)
        if (!c.equal) return &c;
    return nullptr;
}

std::string to_json(const VerifyReport& r) {
    nlohmann::json j{{"kind", "verdict"}, {"suite", r.suite}, {"passed", r.passed()}, {"seconds", r.seconds}};
    j["bounds"] = r.bounds;
    j["count"] = r.comparisons.size();
    j["comparisons"] = nlohmann::json::array();
    for (const auto& c : r.comparisons)
        j["comparisons"].push_back({{"key", c.key}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"equal", c.equal}});
    if (auto f = r.first_failure()) j["first_failure"] = f->key;
    return j.dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string list_text(const std::vector<int>& d) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k];
    os << "]";
    return os.str();
}

std::string key_text(int g, const std::vector<int>& d) { return "g=" + std::to_string(g) + " d=" + list_text(d); }

Comparison compare(std::string key, const Rat& a, const Rat& b) {
    return {std::move(key), to_string(a), to_string(b), a == b};
}

std::map<std::string, long> grid_bounds(const GridBounds& b) {
    return {{"g_max", b.g_max}, {"n_max", b.n_max}, {"sum_max", b.sum_max}};
}

// Evaluates f on every grid key in parallel; comparisons stay in key order.
VerifyReport run_grid(const std::string& suite, const GridBounds& b, int jobs,
                      const std::function<std::optional<Comparison>(int, const std::vector<int>&)>& f) {
    auto t0 = Clock::now();
    auto keys = grid_keys(b);
    std::vector<std::optional<Comparison>> results(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t k) { results[k] = f(keys[k].first, keys[k].second); });
    VerifyReport r{suite, grid_bounds(b), {}, 0};
    for (auto& c : results)
        if (c) r.comparisons.push_back(std::move(*c));
    r.seconds = since(t0);
    return r;
}

}  // namespace

std::vector<std::pair<int, std::vector<int>>> grid_keys(const GridBounds& b) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int g = 0; g <= b.g_max; ++g) {
        int cap = b.sum_max >= 0 ? b.sum_max : 4 * g + b.n_max;
        for (auto& d : multisets(1, b.n_max, cap)) {
            int n = static_cast<int>(d.size());
            int s = std::accumulate(d.begin(), d.end(), 0);
            if (b.sum_max < 0 && s > 4 * g + n) continue;
            out.emplace_back(g, std::move(d));
        }
    }
    return out;
}

VerifyReport verify_main_theorem(const GridBounds& b, int jobs) {
    return run_grid("main-theorem", b, jobs, [](int g, const std::vector<int>& d) -> std::optional<Comparison> {
        if (2 * g - 3 + static_cast<int>(d.size()) < 0) return std::nullopt;
        return compare(key_text(g, d), correlator(d, g), hurwitz_correlator(d, g));
    });
}

VerifyReport verify_string(const GridBounds& b, int jobs) {
    return run_grid("string", b, jobs, [](int g, const std::vector<int>& d) -> std::optional<Comparison> {
        // The t0^2/2 term of the string equation.
        Rat rhs(g == 0 && d == std::vector<int>{0, 0} ? 1 : 0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            auto e = d;
            --e[i];
            rhs += correlator(e, g);
        }
        return compare(key_text(g, d), correlator_tau0(d, g), rhs);
    });
}

VerifyReport verify_levels(const GridBounds& b, int jobs) {
    return run_grid("levels", b, jobs, [](int g, const std::vector<int>& d) -> std::optional<Comparison> {
        if (!vanishes_by_level(d, g, 0)) return std::nullopt;
        return compare(key_text(g, d), correlator(d, g), Rat(0));
    });
}

VerifyReport verify_hurwitz_oracle(int d_max, int g_max) {
    auto t0 = Clock::now();
    VerifyReport r{"hurwitz-oracle", {{"d_max", d_max}, {"g_max", g_max}}, {}, 0};
    std::vector<int> parts;
    std::function<void(int, int)> each = [&](int left, int largest) {
        if (left == 0) {
            Partition mu{parts};
            for (int g = 0; g <= g_max; ++g) {
                Rat closed = one_part_number(g, mu);
                Rat aut(aut_factor(mu));
                std::string key = key_text(g, parts);
                r.comparisons.push_back(
                    compare(key + " left-to-right", closed, aut * factorization_count(g, mu, ProductOrder::LeftToRight)));
                r.comparisons.push_back(compare(key + " right-to-left", closed,
                                                aut * factorization_count(g, mu, ProductOrder::RightToLeft)));
            }
            return;
        }
        for (int p = std::min(left, largest); p >= 1; --p) {
            parts.push_back(p);
            each(left - p, p);
            parts.pop_back();
        }
    };
    for (int d = 1; d <= d_max; ++d) each(d, d);
    Partition cal{{1, 1}};
    r.comparisons.push_back(compare("calibration g=0 mu=(1,1) closed form", one_part_number(0, cal), Rat(1)));
    r.comparisons.push_back(compare("calibration g=0 mu=(1,1) count", factorization_count(0, cal), make_rat(1, 2)));
    r.comparisons.push_back(compare("calibration g=0 mu=(1,1) aut", Rat(aut_factor(cal)), Rat(2)));
    r.seconds = since(t0);
    return r;
}

VerifyReport verify_bracket_oracle(std::uint64_t seed, int pairs, int modes) {
    auto t0 = Clock::now();
    VerifyReport r{"bracket-oracle", {{"seed", static_cast<long>(seed)}, {"pairs", pairs}, {"modes", modes}}, {}, 0};
    std::mt19937_64 rng(seed);
    weyl::NormalOrder no;
    const int budget = 8;
    for (int k = 0; k < pairs; ++k) {
        auto L = weyl::random_symbol(rng, SymbolKind::Density, 3);
        auto R = weyl::random_symbol(rng, SymbolKind::Integrated, 3);
        auto engine = bracket(L, R, BracketBudget{budget, true});
        auto oracle = weyl::commutator(weyl::sample(L, modes), weyl::sample(R, modes), no);
        auto bad = weyl::compare(engine, oracle, modes, 4, budget);
        Comparison c{"pair " + std::to_string(k), "engine", "oracle", bad.empty()};
        if (!bad.empty()) {
            std::ostringstream os;
            os << "grade " << bad[0].grade << " modes " << list_text(bad[0].modes) << ": ";
            c.lhs = os.str() + to_string(bad[0].engine);
            c.rhs = os.str() + to_string(bad[0].oracle);
        }
        r.comparisons.push_back(std::move(c));
    }
    r.seconds = since(t0);
    return r;
}

namespace {

// Symmetrized coefficients restricted to a1 + .. + am = 0; zero iff the zero mode vanishes.
bool zero_mode_vanishes(const FourierSymbol& s) {
    for (const auto& t : symmetrize(s).terms) {
        if (t.slots == 0) {
            if (!t.coeff.is_zero()) return false;
            continue;
        }
        auto names = slot_names(t.slots);
        LinearForm minus_rest;
        for (int j = 0; j + 1 < t.slots; ++j) minus_rest.terms.push_back({names[j], GaussRat(-1)});
        if (!substitute_linear(t.coeff, names.back(), minus_rest).is_zero()) return false;
    }
    return true;
}

}  // namespace

VerifyReport verify_tau_structure(int d_max, int budget) {
    auto t0 = Clock::now();
    VerifyReport r{"tau-structure", {{"d_max", d_max}, {"budget", budget}}, {}, 0};
    BracketBudget bb{budget, true};
    for (int d1 = 0; d1 <= d_max; ++d1)
        for (int d2 = 0; d2 <= d_max; ++d2) {
            std::string key = "d1=" + std::to_string(d1) + " d2=" + std::to_string(d2);
            if (d1 < d2) {
                auto a = bracket(hamiltonian_density(d1 - 1), integrate_hamiltonian(hamiltonian_density(d2)), bb);
                auto b = bracket(hamiltonian_density(d2 - 1), integrate_hamiltonian(hamiltonian_density(d1)), bb);
                r.comparisons.push_back({key + " tau symmetry", "", "", symbols_equal(a, b)});
            }
            auto c = bracket(hamiltonian_density(d1), integrate_hamiltonian(hamiltonian_density(d2)), bb);
            r.comparisons.push_back({key + " zero mode", "", "", zero_mode_vanishes(c)});
        }
    r.seconds = since(t0);
    return r;
}

VerifyReport verify_ehrhart(int q_max, int r_sum_max, int n_max, int r_min) {
    auto t0 = Clock::now();
    VerifyReport r{"ehrhart", {{"q_max", q_max}, {"r_sum_max", r_sum_max}, {"n_max", n_max}, {"r_min", r_min}}, {}, 0};
    std::vector<int> rv;
    std::function<void(int, int)> each = [&](int q, int left) {
        if (static_cast<int>(rv.size()) == q) {
            auto e = ehrhart_convolution(rv);
            std::string key = "r=" + list_text(rv);
            auto at = [&](long N) {
                Rat v(0), pw(1);
                for (int k = 0; k <= e.poly.total_degree(); ++k, pw *= N) v += e.poly.coeff(Exponents{Exponent(k)}).re() * pw;
                return v;
            };
            // With a zero exponent the count and the polynomial only agree from N = q on.
            bool has_zero = std::find(rv.begin(), rv.end(), 0) != rv.end();
            for (long N = has_zero ? q : 0; N <= n_max; ++N)
                r.comparisons.push_back(compare(key + " N=" + std::to_string(N), at(N), ehrhart_brute_force(rv, N)));
            int sum = std::accumulate(rv.begin(), rv.end(), 0);
            r.comparisons.push_back(compare(key + " degree", Rat(e.poly.total_degree()), Rat(sum + q - 1)));
            if (std::all_of(rv.begin(), rv.end(), [](int x) { return x >= 1; })) {
                bool odd = (sum + q - 1) % 2;
                bool parity = true;
                for (const auto& [ex, c] : e.poly.terms())
                    if ((ex[0] % 2 == 1) != odd) parity = false;
                r.comparisons.push_back({key + " parity", "", "", parity});
            }
            return;
        }
        for (int x = r_min; x <= left; ++x) {
            rv.push_back(x);
            each(q, left - x);
            rv.pop_back();
        }
    };
    for (int q = 1; q <= q_max; ++q) each(q, r_sum_max);
    r.seconds = since(t0);
    return r;
}

VerifyReport verify_hamiltonians(int d_max) {
    auto t0 = Clock::now();
    VerifyReport r{"hamiltonians", {{"d_max", d_max}}, {}, 0};
    DiffPoly hm1, h0;
    hm1.add(0, {0}, GaussRat(1));
    h0.add(0, {0, 0}, GaussRat(make_rat(1, 2)));
    h0.add(1, {}, GaussRat(make_rat(-1, 24)));
    auto got_m1 = to_diff_poly(hamiltonian_density(-1));
    auto got_0 = to_diff_poly(hamiltonian_density(0));
    r.comparisons.push_back({"H_-1", got_m1.to_string(), hm1.to_string(), got_m1 == hm1});
    r.comparisons.push_back({"H_0", got_0.to_string(), h0.to_string(), got_0 == h0});
    for (int d = 0; d <= d_max; ++d)
        r.comparisons.push_back({"d/dp0 H_" + std::to_string(d), "", "",
                                 symbols_equal(d_dp0(hamiltonian_density(d)), hamiltonian_density(d - 1))});
    r.seconds = since(t0);
    return r;
}

VerifyReport verify_identities(int order, int jobs) {
    auto t0 = Clock::now();
    VerifyReport r{"identities", {{"order", order}}, {}, 0};
    auto all = check_all_identities(order, jobs);
    std::function<void(const IdentityReport&, const std::string&)> flatten = [&](const IdentityReport& p,
                                                                                 const std::string& prefix) {
        std::string key = prefix + p.name + (p.params.empty() ? "" : "(" + p.params + ")");
        if (p.parts.empty())
            r.comparisons.push_back({key, to_string(p.max_abs_discrepancy), "0", p.passed()});
        for (const auto& q : p.parts) flatten(q, key + "/");
    };
    for (const auto& p : all.parts) flatten(p, "");
    r.seconds = since(t0);
    return r;
}

}  // namespace qwk
