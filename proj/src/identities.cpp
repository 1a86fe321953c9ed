#include "qwk/identities.hpp"

#include "qwk/parallel.hpp"
#include "qwk/special.hpp"
#include "qwk/symbols.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace qwk {

bool IdentityReport::passed() const {
    if (sgn(max_abs_discrepancy) != 0) return false;
    return std::all_of(parts.begin(), parts.end(), [](const IdentityReport& p) { return p.passed(); });
}

namespace {

nlohmann::json report_json(const IdentityReport& r) {
    nlohmann::json j{{"name", r.name},
                     {"params", r.params},
                     {"order", r.order},
                     {"max_abs_discrepancy", to_string(r.max_abs_discrepancy)},
                     {"passed", r.passed()}};
    if (!r.parts.empty()) {
        j["parts"] = nlohmann::json::array();
        for (const auto& p : r.parts) j["parts"].push_back(report_json(p));
    }
    return j;
}

Rat max_over_parts(const std::vector<IdentityReport>& parts) {
    Rat m(0);
    for (const auto& p : parts) m = std::max(m, p.max_abs_discrepancy);
    return m;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    return os.str();
}

}  // namespace

std::string to_json(const IdentityReport& r) { return report_json(r).dump(); }

Rat max_discrepancy(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly diff = a.with_truncation({}) - b.with_truncation({});
    Rat m(0);
    for (const auto& [e, c] : diff.terms()) m = std::max(m, c.l1_norm());
    return m;
}

// ---------------------------------------------------------------------------
// Eulerian identities

IdentityReport check_carlitz(int d, int K) {
    if (d < 0 || K < 1) throw std::invalid_argument("check_carlitz needs d >= 0 and K >= 1");
    Truncation trunc = Truncation::per_variable({{"t", K}});
    MultiPoly lhs({"t"}, trunc);
    for (int k = 1; k <= K; ++k) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), k, d);
        lhs.add_term({static_cast<Exponent>(k)}, GaussRat(Rat(p)));
    }
    MultiPoly t = MultiPoly::variable("t", {"t"}, trunc);
    MultiPoly one = MultiPoly::constant(GaussRat(1), {"t"}, trunc);
    MultiPoly rhs = t * eulerian_polynomial(d).with_truncation(trunc) * series_inverse(poly_pow(one - t, d + 1), K);
    return IdentityReport{"carlitz", "d=" + std::to_string(d) + " K=" + std::to_string(K), K,
                          max_discrepancy(lhs, rhs), {}};
}

IdentityReport check_eulerian_generating(int order) {
    if (order < 1) throw std::invalid_argument("check_eulerian_generating needs order >= 1");
    std::vector<std::string> vars{"z", "t"};
    Truncation trunc = Truncation::per_variable({{"z", order}, {"t", order}});
    MultiPoly z = MultiPoly::variable("z", vars, trunc);
    MultiPoly t = MultiPoly::variable("t", vars, trunc);
    MultiPoly one = MultiPoly::constant(GaussRat(1), vars, trunc);
    auto table = EulerianTable::build(order + 1);
    auto euler = [&](int n) {
        MultiPoly p(vars, trunc);
        for (std::size_t k = 0; k < table.rows[n].size(); ++k)
            p.add_term({0, static_cast<Exponent>(k)}, GaussRat(table.rows[n][k]));
        return p;
    };

    MultiPoly gen_lhs(vars, trunc);
    MultiPoly zpow = one;
    for (int n = 0; n <= order; ++n) {
        gen_lhs += euler(n) * zpow * GaussRat(Rat(1) / factorial(n));
        zpow = zpow * z;
    }
    MultiPoly gen_rhs = (t - one) * series_inverse(t - series_exp(z * (t - one)), order);
    IdentityReport gen{"eulerian_generating", "", order, max_discrepancy(gen_lhs, gen_rhs), {}};

    MultiPoly prim_lhs(vars, trunc);
    MultiPoly inv = series_inverse(one - t, order);
    MultiPoly inv_pow = inv;
    zpow = z;
    for (int n = 0; n + 1 <= order; ++n) {
        prim_lhs += t * euler(n) * zpow * inv_pow * GaussRat(Rat(1) / factorial(n + 1));
        zpow = zpow * z;
        inv_pow = inv_pow * inv;
    }
    MultiPoly ratio = (series_exp(-z) - t) * inv;
    MultiPoly prim_rhs = -z - series_exp_log(ratio, order, SeriesMode::Log);
    IdentityReport prim{"eulerian_primitive", "", order, max_discrepancy(prim_lhs, prim_rhs), {}};

    IdentityReport r{"eulerian_generating", "", order, Rat(0), {gen, prim}};
    r.max_abs_discrepancy = max_over_parts(r.parts);
    return r;
}

// ---------------------------------------------------------------------------
// Sums of exponentials of linear forms with half-integer coefficients.

namespace {

using Form = std::vector<int>;  // coefficients in units of 1/2

struct ExpSum {
    std::size_t nvars = 0;
    std::map<Form, Rat> terms;

    explicit ExpSum(std::size_t n) : nvars(n) {}

    static ExpSum constant(std::size_t n, const Rat& c) {
        ExpSum s(n);
        if (sgn(c) != 0) s.terms.emplace(Form(n, 0), c);
        return s;
    }
    static ExpSum exp(const Form& f, const Rat& c = Rat(1)) {
        ExpSum s(f.size());
        if (sgn(c) != 0) s.terms.emplace(f, c);
        return s;
    }

    void add(const Form& f, const Rat& c) {
        auto [it, inserted] = terms.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }
    ExpSum& operator+=(const ExpSum& o) {
        for (const auto& [f, c] : o.terms) add(f, c);
        return *this;
    }
    ExpSum& operator-=(const ExpSum& o) {
        for (const auto& [f, c] : o.terms) add(f, -c);
        return *this;
    }
    ExpSum operator*(const ExpSum& o) const {
        ExpSum out(nvars);
        Form f(nvars);
        for (const auto& [fa, ca] : terms)
            for (const auto& [fb, cb] : o.terms) {
                for (std::size_t k = 0; k < nvars; ++k) f[k] = fa[k] + fb[k];
                out.add(f, ca * cb);
            }
        return out;
    }
    ExpSum operator*(const Rat& c) const {
        ExpSum out(nvars);
        for (const auto& [f, v] : terms) out.add(f, v * c);
        return out;
    }
    friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
    friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
};

Form scaled(const Form& f, int k) {
    Form out(f);
    for (auto& x : out) x *= k;
    return out;
}

Form plus(const Form& a, const Form& b) {
    Form out(a);
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
    return out;
}

ExpSum sh(const Form& f) {
    ExpSum s = ExpSum::exp(f, Rat(1, 2));
    s.add(scaled(f, -1), Rat(-1, 2));
    return s;
}

ExpSum ch(const Form& f) {
    ExpSum s = ExpSum::exp(f, Rat(1, 2));
    s.add(scaled(f, -1), Rat(1, 2));
    return s;
}

// sh(jY)/sh(Y) = sum_{k=0}^{j-1} e^{(j-1-2k)Y}.
ExpSum dirichlet(const Form& y, int j) {
    if (j < 0) throw std::invalid_argument("negative Dirichlet index");
    ExpSum s(y.size());
    for (int k = 0; k < j; ++k) s.add(scaled(y, j - 1 - 2 * k), Rat(1));
    return s;
}

// Truncated Taylor expansion to total degree `order`.
MultiPoly expand(const ExpSum& s, const std::vector<std::string>& names, int order) {
    MultiPoly out(names, Truncation::total_degree(order));
    if (s.terms.empty()) return out;
    mpz_class lcm = 1;
    for (const auto& [f, c] : s.terms) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<const Form*> forms;
    std::vector<mpz_class> weights;
    for (const auto& [f, c] : s.terms) {
        forms.push_back(&f);
        weights.push_back(c.get_num() * (lcm / c.get_den()));
    }
    std::size_t n = names.size();
    Exponents e(n, 0);
    // partial[l] = prod over fixed variables of form_l[var]^exp
    std::vector<mpz_class> partial = weights;
    std::function<void(std::size_t, int, const std::vector<mpz_class>&)> rec =
        [&](std::size_t var, int left, const std::vector<mpz_class>& acc) {
            if (var == n) {
                mpz_class total = 0;
                for (const auto& v : acc) total += v;
                if (total == 0) return;
                int deg = order - left;
                mpz_class den = lcm;
                den <<= deg;
                for (auto x : e) {
                    mpz_class f;
                    mpz_fac_ui(f.get_mpz_t(), x);
                    den *= f;
                }
                Rat value(total, den);
                value.canonicalize();
                out.add_term(e, GaussRat(value));
                return;
            }
            std::vector<mpz_class> cur = acc;
            for (int k = 0; k <= left; ++k) {
                e[var] = static_cast<Exponent>(k);
                rec(var + 1, left - k, cur);
                for (std::size_t l = 0; l < cur.size(); ++l) cur[l] *= (*forms[l])[var];
            }
            e[var] = 0;
        };
    rec(0, order, partial);
    return out;
}

IdentityReport compare_sums(const std::string& name, const std::string& params, const ExpSum& lhs, const ExpSum& rhs,
                            const std::vector<std::string>& names, int order) {
    return IdentityReport{name, params, order, max_discrepancy(expand(lhs, names, order), expand(rhs, names, order)), {}};
}

Form unit(std::size_t n, std::size_t k, int twice = 2) {
    Form f(n, 0);
    f[k] = twice;
    return f;
}

}  // namespace

// ---------------------------------------------------------------------------

namespace {

// sum_{k>0} A B z^2 k S(kAz) S(kBz) t^k over (A, B, z, t).
MultiPoly developed_s_sum(const std::vector<std::string>& vars, const Truncation& trunc, int order) {
    MultiPoly A = MultiPoly::variable("A", vars, trunc);
    MultiPoly B = MultiPoly::variable("B", vars, trunc);
    MultiPoly z = MultiPoly::variable("z", vars, trunc);
    MultiPoly t = MultiPoly::variable("t", vars, trunc);
    MultiPoly s = s_series(order);
    auto s_of = [&](const MultiPoly& x) {
        MultiPoly out = MultiPoly::constant(GaussRat(1), vars, trunc);
        MultiPoly x2 = x * x;
        MultiPoly power = out;
        for (int l = 1; 2 * l <= order; ++l) {
            power = power * x2;
            if (power.is_zero()) break;
            out += power * s.coeff(Exponents{static_cast<Exponent>(2 * l)});
        }
        return out;
    };
    MultiPoly sum(vars, trunc);
    MultiPoly tk = MultiPoly::constant(GaussRat(1), vars, trunc);
    for (int k = 1; k <= order; ++k) {
        tk = tk * t;
        GaussRat kk(k);
        sum += A * B * z * z * s_of(A * z * kk) * s_of(B * z * kk) * tk * kk;
    }
    return sum;
}

// (1 - t e^{x}) (1 - t e^{-x}) for a series x.
MultiPoly geometric_pair(const MultiPoly& t, const MultiPoly& x) {
    MultiPoly one = MultiPoly::constant(GaussRat(1), t.vars(), t.truncation());
    return (one - t * series_exp(x)) * (one - t * series_exp(-x));
}

}  // namespace

IdentityReport check_sh_lemmas(int order) {
    if (order < 2) throw std::invalid_argument("check_sh_lemmas needs order >= 2");
    std::vector<IdentityReport> parts;
    const std::string ord = "order=" + std::to_string(order);

    {
        std::vector<std::string> vars{"A", "B", "z", "t"};
        Truncation trunc = Truncation::per_variable({{"A", order}, {"B", order}, {"z", order}, {"t", order}});
        MultiPoly A = MultiPoly::variable("A", vars, trunc);
        MultiPoly B = MultiPoly::variable("B", vars, trunc);
        MultiPoly z = MultiPoly::variable("z", vars, trunc);
        MultiPoly t = MultiPoly::variable("t", vars, trunc);
        GaussRat half(Rat(1, 2));
        MultiPoly lhs = developed_s_sum(vars, trunc, order);
        MultiPoly ratio = geometric_pair(t, (A - B) * z * half) *
                          series_inverse(geometric_pair(t, (A + B) * z * half), order);
        parts.push_back({"developed_s_log", ord, order, max_discrepancy(lhs, series_exp_log(ratio, order, SeriesMode::Log)), {}});
        parts.push_back({"eulerian_fin_exp", ord, order, max_discrepancy(series_exp(lhs), ratio), {}});

        MultiPoly one = MultiPoly::constant(GaussRat(1), vars, trunc);
        MultiPoly rhs = one;
        MultiPoly y = (A + B) * z * half;
        MultiPoly pre = series_sinh(A * z * half) * series_sinh(B * z * half) * GaussRat(4);
        MultiPoly tk = one;
        for (int k = 1; k <= order; ++k) {
            tk = tk * t;
            MultiPoly dir(vars, trunc);
            for (int l = 0; l < k; ++l) dir += series_exp(y * GaussRat(k - 1 - 2 * l));
            rhs += pre * dir * tk;
        }
        parts.push_back({"eulerian_fin_sinh", ord, order, max_discrepancy(ratio, rhs), {}});
    }

    {
        std::vector<std::string> vars{"A", "B", "t"};
        Truncation trunc = Truncation::per_variable({{"A", order}, {"B", order}, {"t", order}});
        MultiPoly A = MultiPoly::variable("A", vars, trunc);
        MultiPoly B = MultiPoly::variable("B", vars, trunc);
        MultiPoly t = MultiPoly::variable("t", vars, trunc);
        MultiPoly one = MultiPoly::constant(GaussRat(1), vars, trunc);
        MultiPoly lhs = geometric_pair(t, A - B) * series_inverse(geometric_pair(t, A + B), order);
        MultiPoly rhs = one;
        MultiPoly pre = series_sinh(A) * series_sinh(B) * GaussRat(4);
        MultiPoly tk = one;
        for (int k = 1; k <= order; ++k) {
            tk = tk * t;
            MultiPoly dir(vars, trunc);
            for (int l = 0; l < k; ++l) dir += series_exp((A + B) * GaussRat(k - 1 - 2 * l));
            rhs += pre * dir * tk;
        }
        parts.push_back({"geometric_denominators", ord, order, max_discrepancy(lhs, rhs), {}});
    }

    {
        std::vector<std::string> names{"alpha", "beta", "gamma"};
        Form al = unit(3, 0), be = unit(3, 1), ga = unit(3, 2);
        ExpSum lhs = ch(al) * sh(plus(be, ga)) - ch(be) * sh(plus(al, ga));
        ExpSum rhs = sh(plus(be, scaled(al, -1))) * ch(ga);
        parts.push_back(compare_sums("sinhcosh", ord, lhs, rhs, names, order));
        ExpSum lhs2 = sh(al) * sh(be) + sh(ga) * sh(plus(plus(al, be), ga));
        ExpSum rhs2 = sh(plus(al, ga)) * sh(plus(be, ga));
        parts.push_back(compare_sums("sinhsinh", ord, lhs2, rhs2, names, order));
    }

    {
        std::vector<std::string> names{"mu", "nu"};
        Form mu = unit(2, 0), nu = unit(2, 1), half_mu = unit(2, 0, 1);
        for (int b = 0; b <= 3; ++b) {
            ExpSum lhs(2);
            for (int j = 0; j <= b; ++j) lhs += sh(plus(scaled(mu, j), nu));
            ExpSum mid = dirichlet(half_mu, b + 1) * sh(plus(scaled(half_mu, b), nu));
            ExpSum last = ch(half_mu) * dirichlet(half_mu, b) * sh(plus(scaled(half_mu, b), nu)) +
                          ch(scaled(half_mu, b)) * sh(plus(scaled(half_mu, b), nu));
            std::string p = ord + " b=" + std::to_string(b);
            parts.push_back(compare_sums("finite_sh_sum", p, lhs, mid, names, order));
            parts.push_back(compare_sums("finite_sh_sum_split", p, mid, last, names, order));
        }
    }

    {
        std::vector<std::string> names{"A1", "A2", "B", "X"};
        Form A1 = unit(4, 0), A2 = unit(4, 1), B = unit(4, 2), X = unit(4, 3);
        Form A12 = plus(A1, A2);
        Form S = plus(A12, B);
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 3; ++b) {
                ExpSum lhs(4);
                for (int j = 0; j <= b; ++j)
                    lhs += sh(plus(scaled(A12, a + j), X)) * sh(scaled(plus(A1, B), b - j)) * sh(scaled(plus(A2, B), j));
                Form aX = plus(scaled(A12, a), X);
                ExpSum rhs = (ch(A1) * dirichlet(A1, b) * sh(plus(aX, scaled(B, -b))) +
                              ch(A2) * dirichlet(A2, b) * sh(plus(aX, scaled(S, b))) +
                              ch(B) * dirichlet(B, b) * sh(scaled(plus(aX, scaled(A1, b)), -1)) +
                              ch(S) * dirichlet(S, b) * sh(scaled(plus(aX, scaled(A2, b)), -1))) *
                             Rat(1, 4);
                parts.push_back(compare_sums("three_sh_sum", ord + " a=" + std::to_string(a) + " b=" + std::to_string(b),
                                             lhs, rhs, names, order));
            }
    }

    {
        std::vector<std::string> names{"A1", "A2", "B"};
        Form A1 = unit(3, 0), A2 = unit(3, 1), B = unit(3, 2);
        Form S = plus(plus(A1, A2), B);
        ExpSum lhs = ch(A1) * sh(A2) * sh(B) * sh(S) + sh(A1) * ch(A2) * sh(B) * sh(S) +
                     sh(A1) * sh(A2) * ch(B) * sh(S) - sh(A1) * sh(A2) * sh(B) * ch(S);
        ExpSum rhs = sh(plus(A1, B)) * sh(plus(A2, B)) * sh(plus(A1, A2));
        parts.push_back(compare_sums("four_line_sh", ord, lhs, rhs, names, order));
    }

    IdentityReport r{"sh_lemmas", ord, order, Rat(0), std::move(parts)};
    r.max_abs_discrepancy = max_over_parts(r.parts);
    return r;
}

IdentityReport check_sinh_formula(int n, const std::vector<int>& a, int b, int order) {
    if (n < 2 || n > 4) throw std::invalid_argument("check_sinh_formula needs 2 <= n <= 4");
    if (static_cast<int>(a.size()) != n - 1) throw std::invalid_argument("check_sinh_formula needs n-1 exponents a_2..a_n");
    for (int x : a)
        if (x < 1 || x > 4) throw std::invalid_argument("exponents a_r must lie in 1..4");
    if (b < 0 || b > 4) throw std::invalid_argument("exponent b must lie in 0..4");
    if (order < 0) throw std::invalid_argument("negative order");

    // Variables A1..An, B, X2..Xn.
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) names.push_back("A" + std::to_string(k));
    names.push_back("B");
    for (int k = 2; k <= n; ++k) names.push_back("X" + std::to_string(k));
    std::size_t nv = names.size();
    auto A = [&](int k) { return unit(nv, k - 1); };
    Form B = unit(nv, n);
    auto X = [&](int r) { return unit(nv, n + r - 1); };
    auto partial_sum = [&](int r) {
        Form f(nv, 0);
        for (int k = 1; k <= r; ++k) f = plus(f, A(k));
        return f;
    };
    auto a_of = [&](int r) { return a[r - 2]; };

    // sh(i_r (A_1+..+A_r) + A_r (i_{r+1}+..+i_n + extra) + X_r) for r = 2..n.
    auto sh_product = [&](const std::vector<int>& i, int extra) {
        ExpSum p = ExpSum::constant(nv, Rat(1));
        for (int r = 2; r <= n; ++r) {
            int tail = extra;
            for (int k = r + 1; k <= n; ++k) tail += i[k - 2];
            p = p * sh(plus(plus(scaled(partial_sum(r), i[r - 2]), scaled(A(r), tail)), X(r)));
        }
        return p;
    };

    ExpSum lhs(nv);
    std::vector<int> j(n, 0);
    std::function<void(int, int)> rec = [&](int s, int left) {
        if (s == n - 1) {
            j[s] = left;
            bool any = std::any_of(j.begin(), j.end(), [](int x) { return x > 0; });
            if (!any) return;
            std::vector<int> i(n - 1);
            for (int r = 2; r <= n; ++r) i[r - 2] = a_of(r) + j[r - 1];
            ExpSum term = sh_product(i, 0);
            for (int q = 0; q < n; ++q) {
                if (j[q] == 0) continue;
                Form As = A(q + 1);
                term = term * (sh(As) * sh(B) * dirichlet(plus(As, B), j[q]) * Rat(4));
            }
            lhs += term;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            j[s] = x;
            rec(s + 1, left - x);
        }
    };
    rec(0, b);

    Form total = partial_sum(n);
    ExpSum rhs = sh(total) * sh(B) * dirichlet(plus(total, B), b) * sh_product(a, b) * Rat(4);
    std::string params = "n=" + std::to_string(n) + " a=" + join(a) + " b=" + std::to_string(b);
    return compare_sums("sinh_formula", params, lhs, rhs, names, order);
}

IdentityReport check_products_of_exponentials(int n, const std::vector<int>& Avals, int order) {
    if (n < 2 || n > 3) throw std::invalid_argument("check_products_of_exponentials needs 2 <= n <= 3");
    if (static_cast<int>(Avals.size()) != n) throw std::invalid_argument("check_products_of_exponentials needs n values");
    for (int x : Avals)
        if (x < 1 || x > 4) throw std::invalid_argument("values A_i must lie in 1..4");
    if (order < 0) throw std::invalid_argument("negative order");

    // One variable per pair (i, j), j < i: t_i for j = 1, the ratio t_i/t_j otherwise.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) pairs.push_back({i, j});
    std::vector<int> inflow(n + 1, 0);
    for (int m = n; m >= 2; --m) {
        inflow[m] = Avals[m - 1];
        for (int i = m + 1; i <= n; ++i) inflow[m] += inflow[i];
    }
    std::vector<std::string> vars{"z"};
    std::map<std::string, int> caps{{"z", order}};
    for (auto [i, j] : pairs) {
        std::string v = j == 1 ? "t" + std::to_string(i) : "s" + std::to_string(i) + std::to_string(j);
        vars.push_back(v);
        caps[v] = inflow[i];
    }
    Truncation trunc = Truncation::per_variable(caps);
    MultiPoly z = MultiPoly::variable("z", vars, trunc);
    MultiPoly one = MultiPoly::constant(GaussRat(1), vars, trunc);
    MultiPoly s = s_series(order);
    auto s_at = [&](const Rat& c) {
        MultiPoly out = one;
        MultiPoly z2 = z * z;
        MultiPoly power = one;
        for (int l = 1; 2 * l <= order; ++l) {
            power = power * z2;
            Rat cl(1);
            for (int k = 0; k < 2 * l; ++k) cl *= c;
            out += power * (s.coeff(Exponents{static_cast<Exponent>(2 * l)}) * GaussRat(cl));
        }
        return out;
    };

    MultiPoly lhs_full = one;
    for (int i = 2; i <= n; ++i) {
        MultiPoly prod = one;
        for (int j = 1; j < i; ++j) {
            std::size_t idx = std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) - pairs.begin();
            MultiPoly w = MultiPoly::variable(vars[idx + 1], vars, trunc);
            Rat Ai(Avals[i - 1]), Aj(Avals[j - 1]);
            MultiPoly inner(vars, trunc);
            MultiPoly wk = one;
            for (int k = 1; k <= caps[vars[idx + 1]]; ++k) {
                wk = wk * w;
                inner += s_at(Ai * k) * s_at(Aj * k) * wk * GaussRat(Rat(k));
            }
            inner = inner * z * z * GaussRat(Ai * Aj);
            prod = prod * series_exp(inner);
        }
        lhs_full = lhs_full * (prod - one);
    }

    MultiPoly lhs({"z"});
    for (const auto& [e, c] : lhs_full.terms()) {
        std::vector<int> eff(n + 1, 0);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            eff[i] += e[p + 1];
            if (j >= 2) eff[j] -= e[p + 1];
        }
        bool match = true;
        for (int m = 2; m <= n; ++m) match = match && eff[m] == Avals[m - 1];
        if (match) lhs.add_term({e[0]}, c);
    }

    Truncation zt = Truncation::per_variable({{"z", order}});
    MultiPoly zz = MultiPoly::variable("z", {"z"}, zt);
    MultiPoly zone = MultiPoly::constant(GaussRat(1), {"z"}, zt);
    auto s_z = [&](const Rat& c) {
        MultiPoly out = zone;
        for (int l = 1; 2 * l <= order; ++l) {
            Rat cl(1);
            for (int k = 0; k < 2 * l; ++k) cl *= c;
            out.add_term({static_cast<Exponent>(2 * l)}, s.coeff(Exponents{static_cast<Exponent>(2 * l)}) * GaussRat(cl));
        }
        return out;
    };
    Rat total = std::accumulate(Avals.begin(), Avals.end(), 0);
    Rat pre(Avals[0]);
    for (int r = 2; r <= n; ++r) pre *= Avals[r - 1] * Avals[r - 1];
    for (int k = 0; k < n - 2; ++k) pre *= total;
    MultiPoly rhs = poly_pow(zz, 2 * n - 2) * GaussRat(pre);
    for (int r = 1; r <= n; ++r) rhs = rhs * s_z(Rat(Avals[r - 1]));
    rhs = rhs * series_inverse(s_z(total), order);
    for (int r = 2; r <= n; ++r) rhs = rhs * s_z(Rat(Avals[r - 1]) * total);

    std::string params = "n=" + std::to_string(n) + " A=" + join(Avals);
    return IdentityReport{"products_of_exponentials", params, order, max_discrepancy(lhs, rhs), {}};
}

namespace {

Rat diff_poly_discrepancy(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly diff = a;
    for (const auto& [key, c] : b.terms) diff.add(key.first, key.second, -c);
    Rat m(0);
    for (const auto& [key, c] : diff.terms) m = std::max(m, c.l1_norm());
    return m;
}

DiffPoly random_diff_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 3), len(0, 3), order(0, 3), grade(0, 1), num(-5, 5), den(1, 4);
    DiffPoly d;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<int> orders(len(rng));
        for (auto& s : orders) s = order(rng);
        int p = 0;
        while (p == 0) p = num(rng);
        d.add(grade(rng), orders, GaussRat(make_rat(p, den(rng))));
    }
    return d;
}

}  // namespace

IdentityReport check_variational(std::uint64_t seed, int cases) {
    if (cases < 0) throw std::invalid_argument("negative case count");
    std::mt19937_64 rng(seed);
    std::vector<IdentityReport> parts;
    for (int c = 0; c < cases; ++c) {
        DiffPoly d;
        if (c == 0)
            d.add(0, {0, 0}, GaussRat(make_rat(1, 2)));
        else if (c == 1)
            d.add(0, {1, 1}, GaussRat(1));
        else if (c == 2)
            d.add(0, {}, GaussRat(3));
        else
            d = random_diff_poly(rng);
        DiffPoly lhs = to_diff_poly(variational_derivative(d));
        DiffPoly rhs = to_diff_poly(mode_derivative(from_diff_poly(d)));
        parts.push_back({"variational", d.to_string(), 0, diff_poly_discrepancy(lhs, rhs), {}});
    }
    IdentityReport r{"variational", "seed=" + std::to_string(seed) + " cases=" + std::to_string(cases), 0, Rat(0),
                     std::move(parts)};
    r.max_abs_discrepancy = max_over_parts(r.parts);
    return r;
}

IdentityReport check_all_identities(int order, int jobs) {
    std::vector<std::function<IdentityReport()>> tasks;
    for (int d = 0; d <= 6; ++d) tasks.push_back([d] { return check_carlitz(d, 12); });
    tasks.push_back([] { return check_eulerian_generating(10); });
    tasks.push_back([order] { return check_sh_lemmas(order); });
    for (int n = 2; n <= 3; ++n) {
        std::vector<int> a(n - 1, 1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n - 1) {
                for (int b = 0; b <= 3; ++b) tasks.push_back([n, a, b, order] { return check_sinh_formula(n, a, b, order); });
                return;
            }
            for (int x = 1; x <= 3; ++x) {
                a[k] = x;
                rec(k + 1);
            }
        };
        rec(0);
    }
    for (int n = 2; n <= 3; ++n) {
        std::vector<int> A(n, 1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n) {
                tasks.push_back([n, A] { return check_products_of_exponentials(n, A, 6); });
                return;
            }
            for (int x = 1; x <= 3; ++x) {
                A[k] = x;
                rec(k + 1);
            }
        };
        rec(0);
    }
    tasks.push_back([] { return check_variational(20240601, 50); });

    std::vector<IdentityReport> parts(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t k) { parts[k] = tasks[k](); });
    IdentityReport r{"identities", "", order, Rat(0), std::move(parts)};
    r.max_abs_discrepancy = max_over_parts(r.parts);
    return r;
}

}  // namespace qwk
