#include "qwk/symbols.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace qwk {

std::vector<std::string> slot_names(int m, const std::string& prefix) {
    std::vector<std::string> names;
    names.reserve(m);
    for (int k = 1; k <= m; ++k) names.push_back(prefix + std::to_string(k));
    return names;
}

SymbolTerm make_term(int grade, int slots, const MultiPoly& coeff, std::vector<int> blocks) {
    if (grade < 0 || slots < 0) throw std::invalid_argument("negative grade or slot count");
    if (blocks.empty()) blocks.assign(slots, 1);
    if (std::accumulate(blocks.begin(), blocks.end(), 0) != slots)
        throw std::invalid_argument("blocks do not partition the slots");
    SymbolTerm t;
    t.grade = grade;
    t.slots = slots;
    t.coeff = coeff.with_truncation({}).with_vars(slot_names(slots));
    t.blocks = std::move(blocks);
    return t;
}

FourierSymbol normalize(FourierSymbol s) {
    std::map<std::tuple<int, int, std::vector<int>>, MultiPoly> acc;
    for (auto& t : s.terms) {
        auto key = std::make_tuple(t.grade, t.slots, t.blocks);
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::move(t.coeff));
        else
            it->second += t.coeff;
    }
    FourierSymbol out;
    out.kind = s.kind;
    for (auto& [key, poly] : acc) {
        if (poly.is_zero()) continue;
        SymbolTerm t;
        std::tie(t.grade, t.slots, t.blocks) = key;
        t.coeff = std::move(poly);
        out.terms.push_back(std::move(t));
    }
    return out;
}

namespace {

Exponents sorted_exps(Exponents e) {
    std::sort(e.begin(), e.end());
    return e;
}

long orbit_size(const Exponents& sorted) {
    mpz_class n;
    mpz_fac_ui(n.get_mpz_t(), sorted.size());
    std::size_t k = 0;
    while (k < sorted.size()) {
        std::size_t j = k;
        while (j < sorted.size() && sorted[j] == sorted[k]) ++j;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), j - k);
        n /= f;
        k = j;
    }
    return n.get_si();
}

// (grade, slots, sorted exponents) -> sum of coefficients over the orbit.
std::map<std::tuple<int, int, Exponents>, GaussRat> orbit_sums(const FourierSymbol& s) {
    std::map<std::tuple<int, int, Exponents>, GaussRat> out;
    for (const auto& t : s.terms)
        for (const auto& [e, c] : t.coeff.terms()) out[{t.grade, t.slots, sorted_exps(e)}] += c;
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

FourierSymbol symmetrize(const FourierSymbol& s) {
    FourierSymbol out;
    out.kind = s.kind;
    std::map<std::pair<int, int>, MultiPoly> acc;
    for (const auto& [key, sum] : orbit_sums(s)) {
        const auto& [grade, m, lambda] = key;
        auto [it, ok] = acc.try_emplace({grade, m}, MultiPoly(slot_names(m)));
        GaussRat c = sum / GaussRat(Rat(orbit_size(lambda)));
        Exponents e = lambda;
        do {
            it->second.add_term(e, c);
        } while (std::next_permutation(e.begin(), e.end()));
    }
    for (auto& [key, poly] : acc) {
        if (poly.is_zero()) continue;
        out.terms.push_back(make_term(key.first, key.second, poly, {key.second}));
        if (key.second == 0) out.terms.back().blocks.clear();
    }
    return out;
}

bool symbols_equal(const FourierSymbol& a, const FourierSymbol& b) {
    return a.kind == b.kind && orbit_sums(a) == orbit_sums(b);
}

FourierSymbol d_x(const FourierSymbol& s) {
    if (s.kind != SymbolKind::Density) throw std::invalid_argument("d_x needs a density symbol");
    FourierSymbol out;
    out.kind = s.kind;
    for (const auto& t : s.terms) {
        if (t.slots == 0) continue;
        auto names = slot_names(t.slots);
        MultiPoly sum(names);
        for (const auto& v : names) sum += MultiPoly::variable(v, names);
        SymbolTerm u = t;
        u.coeff = t.coeff * sum * GaussRat::i();
        out.terms.push_back(std::move(u));
    }
    return normalize(std::move(out));
}

namespace {

// Drops slot j after the caller has fixed its value; returns the polynomial in the
// remaining slots, renamed a1..a_{m-1}.
MultiPoly drop_slot(const MultiPoly& p, int m, int j) {
    MultiPoly out(slot_names(m - 1));
    for (const auto& [e, c] : p.terms()) {
        if (e[j] != 0) continue;
        Exponents f;
        f.reserve(m - 1);
        for (int k = 0; k < m; ++k)
            if (k != j) f.push_back(e[k]);
        out.add_term(f, c);
    }
    return out;
}

std::vector<int> shrink_block(const std::vector<int>& blocks, std::size_t b) {
    std::vector<int> out;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        int size = blocks[k] - (k == b ? 1 : 0);
        if (size > 0) out.push_back(size);
    }
    return out;
}

}  // namespace

FourierSymbol d_dp0(const FourierSymbol& s) {
    FourierSymbol out;
    out.kind = s.kind;
    for (const auto& t : s.terms) {
        if (t.slots == 0) continue;
        int first = 0;
        for (std::size_t b = 0; b < t.blocks.size(); ++b) {
            SymbolTerm u;
            u.grade = t.grade;
            u.slots = t.slots - 1;
            u.coeff = drop_slot(t.coeff, t.slots, first) * GaussRat(t.blocks[b]);
            u.blocks = shrink_block(t.blocks, b);
            out.terms.push_back(std::move(u));
            first += t.blocks[b];
        }
    }
    return normalize(std::move(out));
}

std::map<int, GaussRat> eval_string_point(const FourierSymbol& s) {
    std::map<int, GaussRat> out;
    for (const auto& t : s.terms) {
        GaussRat c = t.coeff.coeff(Exponents(t.slots, 1));
        out[t.grade] += c * GaussRat::i_pow(-t.slots);
    }
    return out;
}

FourierSymbol mode_derivative(const FourierSymbol& s) {
    FourierSymbol out;
    out.kind = SymbolKind::Density;
    for (const auto& t : s.terms) {
        if (t.slots == 0) continue;
        auto names = slot_names(t.slots);
        int first = 0;
        for (std::size_t b = 0; b < t.blocks.size(); ++b) {
            LinearForm minus_rest;
            for (int k = 0; k < t.slots; ++k)
                if (k != first) minus_rest.terms.push_back({names[k], GaussRat(-1)});
            MultiPoly sub = substitute_linear(t.coeff, names[first], minus_rest);
            std::vector<std::string> rest;
            for (int k = 0; k < t.slots; ++k)
                if (k != first) rest.push_back(names[k]);
            SymbolTerm u;
            u.grade = t.grade;
            u.slots = t.slots - 1;
            u.coeff = sub.with_vars(rest).renamed(slot_names(t.slots - 1)) * GaussRat(t.blocks[b]);
            u.blocks = shrink_block(t.blocks, b);
            out.terms.push_back(std::move(u));
            first += t.blocks[b];
        }
    }
    return normalize(std::move(out));
}

void DiffPoly::add(int grade, std::vector<int> orders, const GaussRat& c) {
    if (c.is_zero()) return;
    std::sort(orders.begin(), orders.end());
    auto [it, inserted] = terms.try_emplace({grade, std::move(orders)}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

std::string DiffPoly::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << qwk::to_string(c) << ")";
        if (key.first > 0) os << "*h^" << key.first;
        for (int s : key.second) os << "*u" << s;
    }
    return os.str();
}

DiffPoly to_diff_poly(const FourierSymbol& s) {
    if (s.kind != SymbolKind::Density) throw std::invalid_argument("to_diff_poly needs a density symbol");
    DiffPoly d;
    for (const auto& [key, sum] : orbit_sums(s)) {
        const auto& [grade, m, lambda] = key;
        std::vector<int> orders(lambda.begin(), lambda.end());
        long weight = std::accumulate(orders.begin(), orders.end(), 0L);
        d.add(grade, orders, sum * GaussRat::i_pow(-weight));
    }
    return d;
}

FourierSymbol from_diff_poly(const DiffPoly& d) {
    std::map<std::pair<int, int>, MultiPoly> acc;
    for (const auto& [key, c] : d.terms) {
        const auto& [grade, orders] = key;
        int m = static_cast<int>(orders.size());
        auto [it, ok] = acc.try_emplace({grade, m}, MultiPoly(slot_names(m)));
        Exponents e(orders.begin(), orders.end());
        std::sort(e.begin(), e.end());
        long weight = std::accumulate(orders.begin(), orders.end(), 0L);
        GaussRat v = c * GaussRat::i_pow(weight) / GaussRat(Rat(orbit_size(e)));
        do {
            it->second.add_term(e, v);
        } while (std::next_permutation(e.begin(), e.end()));
    }
    FourierSymbol out;
    for (auto& [key, poly] : acc) {
        if (poly.is_zero()) continue;
        out.terms.push_back(make_term(key.first, key.second, poly, key.second ? std::vector<int>{key.second} : std::vector<int>{}));
    }
    return out;
}

DiffPoly diff_poly_dx(const DiffPoly& d) {
    DiffPoly out;
    for (const auto& [key, c] : d.terms) {
        const auto& [grade, orders] = key;
        for (std::size_t j = 0; j < orders.size(); ++j) {
            auto next = orders;
            ++next[j];
            out.add(grade, next, c);
        }
    }
    return out;
}

DiffPoly variational_derivative_u(const DiffPoly& d) {
    int max_order = -1;
    for (const auto& [key, c] : d.terms)
        for (int s : key.second) max_order = std::max(max_order, s);
    DiffPoly out;
    for (int s = 0; s <= max_order; ++s) {
        DiffPoly partial;
        for (const auto& [key, c] : d.terms) {
            const auto& [grade, orders] = key;
            auto it = std::find(orders.begin(), orders.end(), s);
            if (it == orders.end()) continue;
            long mult = std::count(orders.begin(), orders.end(), s);
            auto rest = orders;
            rest.erase(rest.begin() + (it - orders.begin()));
            partial.add(grade, rest, c * GaussRat(mult));
        }
        for (int k = 0; k < s; ++k) {
            partial = diff_poly_dx(partial);
            for (auto& [key, c] : partial.terms) c = -c;
        }
        for (const auto& [key, c] : partial.terms) out.add(key.first, key.second, c);
    }
    return out;
}

FourierSymbol variational_derivative(const DiffPoly& d) { return from_diff_poly(variational_derivative_u(d)); }

std::string to_json(const FourierSymbol& s) {
    nlohmann::json j;
    j["kind"] = s.kind == SymbolKind::Density ? "density" : "integrated";
    j["terms"] = nlohmann::json::array();
    for (const auto& t : s.terms) {
        j["terms"].push_back({{"grade", t.grade}, {"slots", t.slots}, {"blocks", t.blocks}, {"coeff", t.coeff.to_string()}});
    }
    return j.dump();
}

}  // namespace qwk
