#include "qwk/special.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace qwk {

Rat factorial(long n) {
    if (n < 0) throw std::invalid_argument("negative factorial");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

Rat binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

MultiPoly s_series(int order, const std::string& var) {
    if (order < 0) throw std::invalid_argument("negative order");
    MultiPoly s({var}, Truncation::per_variable({{var, order}}));
    Rat pow4(1);
    for (int l = 0; 2 * l <= order; ++l) {
        s.add_term({static_cast<Exponent>(2 * l)}, GaussRat(Rat(1) / (pow4 * factorial(2 * l + 1))));
        pow4 *= 4;
    }
    return s;
}

namespace {

MultiPoly s_at(const MultiPoly& x, const MultiPoly& z, const MultiPoly& s, int order) {
    MultiPoly out = MultiPoly::constant(GaussRat(1), z.vars(), z.truncation());
    MultiPoly x2z2 = x * x * z * z;
    MultiPoly power = out;
    for (int l = 1; 2 * l <= order; ++l) {
        power = power * x2z2;
        out += power * s.coeff(Exponents{static_cast<Exponent>(2 * l)});
    }
    return out;
}

}  // namespace

MultiPoly s_product_coefficient(const std::vector<MultiPoly>& args, const std::vector<std::string>& vars, int g) {
    if (g < 0) throw std::invalid_argument("negative genus");
    if (std::find(vars.begin(), vars.end(), "z") != vars.end()) throw std::invalid_argument("variable name z is reserved");
    auto all = vars;
    all.push_back("z");
    Truncation trunc = Truncation::per_variable({{"z", 2 * g}});
    MultiPoly z = MultiPoly::variable("z", all, trunc);
    MultiPoly s = s_series(2 * g);
    MultiPoly prod = series_inverse(s, 2 * g).with_vars(all).with_truncation(trunc);
    for (const auto& x : args) prod = prod * s_at(x.with_vars(all).with_truncation(trunc), z, s, 2 * g);
    int zi = prod.var_index("z");
    MultiPoly out(vars);
    for (const auto& [e, c] : prod.terms()) {
        if (e[zi] != 2 * g) continue;
        Exponents f(e);
        f.erase(f.begin() + zi);
        out.add_term(f, c);
    }
    return out;
}

namespace {

MultiPoly capped(const MultiPoly& p, int order) {
    Truncation t = p.truncation();
    for (const auto& v : p.vars())
        if (!t.per_var.count(v) && !t.total) t.per_var[v] = order;
    return p.with_truncation(t);
}

bool all_capped(const MultiPoly& p) {
    const auto& t = p.truncation();
    if (t.total && t.total_vars.empty()) return true;
    for (const auto& v : p.vars()) {
        bool in_total = t.total && std::find(t.total_vars.begin(), t.total_vars.end(), v) != t.total_vars.end();
        if (!t.per_var.count(v) && !in_total) return false;
    }
    return true;
}

// sum_k coeffs[k] * u^k where u has zero constant term and powers vanish eventually.
MultiPoly nilpotent_sum(const MultiPoly& u, const std::function<GaussRat(int)>& coeff_of) {
    if (!all_capped(u)) throw std::invalid_argument("series operation needs every variable truncated");
    MultiPoly out = MultiPoly::constant(coeff_of(0), u.vars(), u.truncation());
    MultiPoly power = MultiPoly::constant(GaussRat(1), u.vars(), u.truncation());
    for (int k = 1;; ++k) {
        power = power * u;
        if (power.is_zero()) break;
        GaussRat c = coeff_of(k);
        if (!c.is_zero()) out += power * c;
    }
    return out;
}

}  // namespace

MultiPoly series_inverse(const MultiPoly& p, int order) {
    MultiPoly q = capped(p, order);
    GaussRat c0 = q.constant_term();
    if (c0.is_zero()) throw std::domain_error("series inverse of a series with zero constant term");
    MultiPoly u = MultiPoly::constant(GaussRat(1), q.vars(), q.truncation()) - q * (GaussRat(1) / c0);
    return nilpotent_sum(u, [](int) { return GaussRat(1); }) * (GaussRat(1) / c0);
}

MultiPoly series_exp(const MultiPoly& arg) {
    if (!arg.constant_term().is_zero()) throw std::domain_error("exp of a series with nonzero constant term");
    return nilpotent_sum(arg, [](int k) { return GaussRat(Rat(1) / factorial(k)); });
}

MultiPoly series_exp_log(const MultiPoly& p, int order, SeriesMode mode) {
    MultiPoly q = capped(p, order);
    if (mode == SeriesMode::Exp) return series_exp(q);
    if (q.constant_term() != GaussRat(1)) throw std::domain_error("log of a series with constant term other than 1");
    MultiPoly u = q - MultiPoly::constant(GaussRat(1), q.vars(), q.truncation());
    return nilpotent_sum(u, [](int k) {
        if (k == 0) return GaussRat(0);
        return GaussRat(make_rat(k % 2 == 1 ? 1 : -1, k));
    });
}

MultiPoly series_sinh(const MultiPoly& arg) {
    if (!arg.constant_term().is_zero()) throw std::domain_error("sinh of a series with nonzero constant term");
    return nilpotent_sum(arg, [](int k) { return k % 2 == 1 ? GaussRat(Rat(1) / factorial(k)) : GaussRat(0); });
}

MultiPoly series_cosh(const MultiPoly& arg) {
    if (!arg.constant_term().is_zero()) throw std::domain_error("cosh of a series with nonzero constant term");
    return nilpotent_sum(arg, [](int k) { return k % 2 == 0 ? GaussRat(Rat(1) / factorial(k)) : GaussRat(0); });
}

EulerianTable EulerianTable::build(int n_max) {
    EulerianTable t;
    t.rows.push_back({Rat(1)});
    for (int n = 1; n <= n_max; ++n) {
        const auto& prev = t.rows.back();
        std::vector<Rat> row(n, Rat(0));
        for (int k = 0; k < n; ++k) {
            if (k < static_cast<int>(prev.size())) row[k] += (k + 1) * prev[k];
            if (k >= 1 && k - 1 < static_cast<int>(prev.size())) row[k] += (n - k) * prev[k - 1];
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

MultiPoly eulerian_polynomial(int n, const std::string& var) {
    if (n < 0) throw std::invalid_argument("negative Eulerian index");
    auto table = EulerianTable::build(n);
    MultiPoly p({var});
    const auto& row = table.rows[n];
    for (std::size_t k = 0; k < row.size(); ++k) p.add_term({static_cast<Exponent>(k)}, GaussRat(row[k]));
    return p;
}

namespace {

using Dense = std::vector<Rat>;

Dense dense_mul(const Dense& a, const Dense& b) {
    Dense c(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Dense compute_ehrhart(const std::vector<int>& r) {
    int q = static_cast<int>(r.size());
    int D = q;
    int rmax = 0;
    for (int x : r) {
        if (x < 0) throw std::invalid_argument("negative Ehrhart exponent");
        D += x;
        rmax = std::max(rmax, x);
    }
    auto table = EulerianTable::build(rmax);
    // P(t) = prod t * E_{r_i}(t)
    Dense P{Rat(1)};
    for (int x : r) {
        Dense f(1, Rat(0));
        f.insert(f.end(), table.rows[x].begin(), table.rows[x].end());
        P = dense_mul(P, f);
    }
    // binom(N - j + D - 1, D - 1) = prod_{i=1}^{D-1} (N - j + i) / (D-1)!
    Dense result(D, Rat(0));
    Rat inv_fact = Rat(1) / factorial(D - 1);
    for (std::size_t j = 0; j < P.size(); ++j) {
        if (sgn(P[j]) == 0) continue;
        Dense b{Rat(1)};
        for (int i = 1; i <= D - 1; ++i) b = dense_mul(b, Dense{Rat(i - static_cast<long>(j)), Rat(1)});
        for (std::size_t k = 0; k < b.size(); ++k) result[k] += P[j] * b[k] * inv_fact;
    }
    while (result.size() > 1 && sgn(result.back()) == 0) result.pop_back();
    return result;
}

struct EhrhartCache {
    std::shared_mutex mutex;
    std::map<std::vector<int>, std::unique_ptr<Dense>> entries;
};

EhrhartCache& ehrhart_cache() {
    static EhrhartCache cache;
    return cache;
}

}  // namespace

const std::vector<Rat>& ehrhart_coefficients(std::vector<int> r) {
    if (r.empty()) throw std::invalid_argument("empty Ehrhart exponent list");
    std::sort(r.begin(), r.end());
    auto& cache = ehrhart_cache();
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.entries.find(r);
        if (it != cache.entries.end()) return *it->second;
    }
    auto value = std::make_unique<Dense>(compute_ehrhart(r));
    std::unique_lock lock(cache.mutex);
    auto [it, inserted] = cache.entries.try_emplace(r, std::move(value));
    return *it->second;
}

EhrhartPoly ehrhart_convolution(const std::vector<int>& r) {
    const auto& c = ehrhart_coefficients(r);
    EhrhartPoly out;
    out.q = static_cast<int>(r.size());
    out.r = r;
    out.poly = MultiPoly({"N"});
    for (std::size_t k = 0; k < c.size(); ++k) out.poly.add_term({static_cast<Exponent>(k)}, GaussRat(c[k]));
    return out;
}

Rat ehrhart_brute_force(const std::vector<int>& r, long N) {
    if (r.empty()) throw std::invalid_argument("empty Ehrhart exponent list");
    long q = static_cast<long>(r.size());
    if (N < q) return Rat(0);
    Rat total(0);
    // Enumerate compositions of N into q positive parts via the first q-1 parts.
    std::function<void(long, long, Rat)> rec = [&](long idx, long remaining, Rat prod) {
        if (idx == q - 1) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(remaining), static_cast<unsigned long>(r[idx]));
            total += prod * Rat(p);
            return;
        }
        for (long v = 1; v <= remaining - (q - 1 - idx); ++v) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(v), static_cast<unsigned long>(r[idx]));
            rec(idx + 1, remaining - v, prod * Rat(p));
        }
    };
    rec(0, N, Rat(1));
    return total;
}

}  // namespace qwk
