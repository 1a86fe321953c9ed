#include "qwk/hurwitz.hpp"

#include "qwk/special.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qwk {

int Partition::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition parse_partition(const std::string& text) {
    Partition mu;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partition part '" + item + "'");
        }
        if (pos != item.size() || v <= 0) throw std::invalid_argument("bad partition part '" + item + "'");
        mu.parts.push_back(v);
    }
    if (mu.parts.empty()) throw std::invalid_argument("empty partition");
    return mu;
}

namespace {

std::vector<std::string> mu_names(int n) {
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) names.push_back("m" + std::to_string(k));
    return names;
}

// (sum mu)^power * [z^2g] prod S(mu_i z)/S(z), optionally capped per variable.
MultiPoly correlator_series(int g, int n, int power, const Truncation& caps) {
    auto names = mu_names(n);
    std::vector<MultiPoly> args;
    MultiPoly sum(names, caps);
    for (const auto& v : names) {
        args.push_back(MultiPoly::variable(v, names, caps));
        sum += args.back();
    }
    MultiPoly c = s_product_coefficient(args, names, g).with_truncation(caps);
    return c * poly_pow(sum, power);
}

Rat signed_coefficient(const std::vector<int>& d, int g, int power, int sign_numerator) {
    int n = static_cast<int>(d.size());
    auto names = mu_names(n);
    std::map<std::string, int> caps;
    for (int k = 0; k < n; ++k) caps[names[k]] = d[k];
    MultiPoly p = correlator_series(g, n, power, Truncation::per_variable(caps));
    GaussRat c = p.coeff(Exponents(d.begin(), d.end()));
    if (!c.is_real()) throw std::logic_error("non-real Hurwitz coefficient");
    return (sign_numerator / 2) % 2 ? Rat(-c.re()) : c.re();
}

}  // namespace

HurwitzPoly one_part_polynomial(int g, int n) {
    if (g < 0 || n < 1) throw std::invalid_argument("one_part_polynomial needs g >= 0 and n >= 1");
    int r = 2 * g - 1 + n;
    if (r - 1 < 0) throw std::invalid_argument("one_part_polynomial needs 2g-2+n >= 0");
    HurwitzPoly h;
    h.g = g;
    h.n = n;
    h.poly = correlator_series(g, n, r - 1, {}) * GaussRat(factorial(r));
    return h;
}

Rat evaluate(const HurwitzPoly& h, const Partition& mu) {
    if (static_cast<int>(mu.parts.size()) != h.n) throw std::invalid_argument("partition length mismatch");
    GaussRat total;
    for (const auto& [e, c] : h.poly.terms()) {
        Rat m(1);
        for (int k = 0; k < h.n; ++k)
            for (int j = 0; j < e[k]; ++j) m *= mu.parts[k];
        total += c * GaussRat(m);
    }
    if (!total.is_real()) throw std::logic_error("non-real Hurwitz number");
    return total.re();
}

Rat one_part_number(int g, const Partition& mu) {
    int n = static_cast<int>(mu.parts.size());
    if (g < 0 || n < 1) throw std::invalid_argument("one_part_number needs g >= 0 and a nonempty partition");
    int r = 2 * g - 1 + n;
    HurwitzPoly c{g, n, correlator_series(g, n, 0, {})};
    Rat d(mu.degree());
    Rat scale = factorial(r);
    for (int k = 0; k < r - 1; ++k) scale *= d;
    if (r == 0) scale /= d;
    return scale * evaluate(c, mu);
}

Rat hurwitz_correlator(const std::vector<int>& d, int g) {
    int n = static_cast<int>(d.size());
    if (g < 0 || 2 * g - 3 + n < 0) throw std::invalid_argument("hurwitz_correlator needs 2g-3+n >= 0");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("negative insertion index");
    int sum = std::accumulate(d.begin(), d.end(), 0);
    if ((sum - n) % 2 == 0 || sum < 2 * g - 3 + n || sum > 4 * g - 3 + n) return Rat(0);
    return signed_coefficient(d, g, 2 * g - 3 + n, 4 * g - 3 + n - sum);
}

Rat hurwitz_correlator_tau0(const std::vector<int>& rest, int g) {
    int n = static_cast<int>(rest.size());
    if (g < 0 || 2 * g - 2 + n < 0) throw std::invalid_argument("hurwitz_correlator_tau0 needs 2g-2+n >= 0");
    for (int x : rest)
        if (x < 0) throw std::invalid_argument("negative insertion index");
    int sum = std::accumulate(rest.begin(), rest.end(), 0);
    int sign_numerator = n - 2 - sum;
    if (sign_numerator % 2) return Rat(0);
    return signed_coefficient(rest, g, 2 * g - 2 + n, sign_numerator < 0 ? -sign_numerator : sign_numerator);
}

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& s, const Perm& t, ProductOrder order) {
    Perm out(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) out[x] = order == ProductOrder::LeftToRight ? t[s[x]] : s[t[x]];
    return out;
}

std::vector<int> cycle_type(const Perm& p) {
    std::vector<int> type;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        for (std::size_t y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
}

}  // namespace

Rat factorization_count(int g, const Partition& mu, ProductOrder order, int max_degree) {
    int d = mu.degree();
    int n = static_cast<int>(mu.parts.size());
    int r = 2 * g - 1 + n;
    if (d < 1) throw std::invalid_argument("partition of degree zero");
    if (d > max_degree) throw std::invalid_argument("partition degree above the enumeration cap");
    if (r < 0) throw std::invalid_argument("negative number of simple ramifications");
    for (int p : mu.parts)
        if (p <= 0) throw std::invalid_argument("partition parts must be positive");

    std::vector<Perm> transpositions;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Perm t(d);
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[a], t[b]);
            transpositions.push_back(t);
        }
    Perm sigma0(d);
    for (int x = 0; x < d; ++x) sigma0[x] = (x + 1) % d;

    // Number of transposition tuples reaching each permutation.
    std::map<Perm, mpz_class> layer{{sigma0, 1}};
    for (int step = 0; step < r; ++step) {
        std::map<Perm, mpz_class> next;
        for (const auto& [p, count] : layer)
            for (const auto& t : transpositions) next[compose(p, t, order)] += count;
        layer = std::move(next);
    }
    auto target = mu.parts;
    std::sort(target.begin(), target.end());
    mpz_class total = 0;
    for (const auto& [p, count] : layer)
        if (cycle_type(p) == target) total += count;
    return Rat(total) / Rat(d);
}

long aut_factor(const Partition& mu) {
    std::map<int, int> mult;
    for (int p : mu.parts) ++mult[p];
    long out = 1;
    for (const auto& [p, m] : mult)
        for (int k = 2; k <= m; ++k) out *= k;
    return out;
}

}  // namespace qwk
