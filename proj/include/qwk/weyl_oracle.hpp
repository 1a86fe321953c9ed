#pragma once

// Finite-mode reference for the star-product commutator: explicit normal
// ordering in the Weyl algebra on modes |a| <= M with [p_a, p_b] = hbar a delta_{a+b,0},
// where hbar stands for i times Planck's constant (the grade variable).

#include "qwk/symbols.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace qwk::weyl {

using Modes = std::vector<int>;  // sorted: negative modes left of positive ones
using Element = std::map<std::pair<int, Modes>, qwk::GaussRat>;

inline void accumulate(Element& e, int grade, const Modes& m, const qwk::GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = e.try_emplace({grade, m}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

inline qwk::GaussRat evaluate(const qwk::MultiPoly& p, const std::vector<int>& point) {
    qwk::GaussRat total;
    for (const auto& [e, c] : p.terms()) {
        qwk::Rat m(1);
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) m *= point[k];
        total += c * qwk::GaussRat(m);
    }
    return total;
}

// Enumerates [-M, M]^m.
template <typename F>
void for_each_tuple(int m, int M, F&& f) {
    std::vector<int> t(m, -M);
    if (m == 0) {
        f(t);
        return;
    }
    for (;;) {
        f(t);
        int k = m - 1;
        while (k >= 0 && t[k] == M) t[k--] = -M;
        if (k < 0) return;
        ++t[k];
    }
}

// Restriction of a symbol to modes |a| <= M; integrated symbols keep zero-sum tuples only.
inline Element sample(const qwk::FourierSymbol& s, int M) {
    Element out;
    for (const auto& t : s.terms) {
        for_each_tuple(t.slots, M, [&](const std::vector<int>& a) {
            if (s.kind == qwk::SymbolKind::Integrated && std::accumulate(a.begin(), a.end(), 0) != 0) return;
            Modes m(a);
            std::sort(m.begin(), m.end());
            accumulate(out, t.grade, m, evaluate(t.coeff, a));
        });
    }
    return out;
}

class NormalOrder {
public:
    // Normal form of the word p_{w1} ... p_{wk}: (extra grade, modes) -> integer factor.
    const std::map<std::pair<int, Modes>, long>& of(const std::vector<int>& word) {
        auto it = memo_.find(word);
        if (it != memo_.end()) return it->second;
        std::map<std::pair<int, Modes>, long> out;
        std::vector<int> zeros, rest;
        for (int x : word) (x == 0 ? zeros : rest).push_back(x);
        std::size_t k = 0;
        while (k + 1 < rest.size() && !(rest[k] > 0 && rest[k + 1] < 0)) ++k;
        if (k + 1 >= rest.size()) {
            Modes m(word);
            std::sort(m.begin(), m.end());
            out[{0, m}] = 1;
        } else {
            std::vector<int> swapped = rest;
            std::swap(swapped[k], swapped[k + 1]);
            swapped.insert(swapped.end(), zeros.begin(), zeros.end());
            for (const auto& [key, c] : of(swapped)) out[key] += c;
            if (rest[k] + rest[k + 1] == 0) {
                std::vector<int> shorter;
                for (std::size_t j = 0; j < rest.size(); ++j)
                    if (j != k && j != k + 1) shorter.push_back(rest[j]);
                shorter.insert(shorter.end(), zeros.begin(), zeros.end());
                for (const auto& [key, c] : of(shorter)) out[{key.first + 1, key.second}] += c * rest[k];
            }
        }
        for (auto j = out.begin(); j != out.end();) j = j->second == 0 ? out.erase(j) : std::next(j);
        return memo_.emplace(word, std::move(out)).first->second;
    }

private:
    std::map<std::vector<int>, std::map<std::pair<int, Modes>, long>> memo_;
};

inline Element product(const Element& a, const Element& b, NormalOrder& no) {
    Element out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            std::vector<int> word = ka.second;
            word.insert(word.end(), kb.second.begin(), kb.second.end());
            for (const auto& [key, f] : no.of(word))
                accumulate(out, ka.first + kb.first + key.first, key.second, ca * cb * qwk::GaussRat(f));
        }
    return out;
}

// (ab - ba) / hbar.
inline Element commutator(const Element& a, const Element& b, NormalOrder& no) {
    Element ab = product(a, b, no);
    Element out;
    for (const auto& [k, c] : ab) accumulate(out, k.first, k.second, c);
    for (const auto& [k, c] : product(b, a, no)) accumulate(out, k.first, k.second, -c);
    Element shifted;
    for (const auto& [k, c] : out) {
        if (k.first < 1) throw std::logic_error("commutator term without hbar");
        shifted[{k.first - 1, k.second}] = c;
    }
    return shifted;
}

// Normal-ordered coefficient of a symbol at a sorted multiset of modes.
inline qwk::GaussRat coefficient(const qwk::FourierSymbol& s, int grade, const Modes& modes) {
    qwk::GaussRat total;
    for (const auto& t : s.terms) {
        if (t.grade != grade || t.slots != static_cast<int>(modes.size())) continue;
        Modes perm = modes;
        do {
            total += evaluate(t.coeff, perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return total;
}

// Multisets of size m in [-M, M] whose positive part and negative part each sum to at most M
// in absolute value; on these the truncated algebra reproduces the full commutator.
inline std::vector<Modes> window(int m, int M) {
    std::vector<Modes> out;
    for_each_tuple(m, M, [&](const std::vector<int>& a) {
        if (!std::is_sorted(a.begin(), a.end())) return;
        int pos = 0, neg = 0;
        for (int x : a) (x > 0 ? pos : neg) += x;
        if (pos <= M && -neg <= M) out.push_back(a);
    });
    return out;
}

struct Mismatch {
    int grade;
    Modes modes;
    qwk::GaussRat engine;
    qwk::GaussRat oracle;
};

// Compares an engine commutator with the oracle on the exact window; returns mismatches.
inline std::vector<Mismatch> compare(const qwk::FourierSymbol& engine, const Element& oracle, int M, int max_slots,
                                     int max_grade) {
    std::vector<Mismatch> out;
    for (int m = 0; m <= max_slots; ++m)
        for (const auto& modes : window(m, M))
            for (int g = 0; g <= max_grade; ++g) {
                qwk::GaussRat e = coefficient(engine, g, modes);
                auto it = oracle.find({g, modes});
                qwk::GaussRat o = it == oracle.end() ? qwk::GaussRat() : it->second;
                if (e != o) out.push_back({g, modes, e, o});
            }
    return out;
}

inline qwk::MultiPoly random_poly(std::mt19937_64& rng, int m, int max_degree) {
    auto names = qwk::slot_names(m);
    qwk::MultiPoly p(names);
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_degree), count(1, 4);
    int k = count(rng);
    for (int j = 0; j < k; ++j) {
        qwk::Exponents e(m, 0);
        int d = deg(rng);
        std::uniform_int_distribution<int> slot(0, std::max(0, m - 1));
        for (int s = 0; s < d && m > 0; ++s) ++e[slot(rng)];
        p.add_term(e, qwk::GaussRat(coef(rng)));
    }
    return p;
}

inline qwk::FourierSymbol random_symbol(std::mt19937_64& rng, qwk::SymbolKind kind, int max_slots) {
    qwk::FourierSymbol s;
    s.kind = kind;
    std::uniform_int_distribution<int> nterms(1, 2), slots(1, max_slots), grade(0, 1);
    int k = nterms(rng);
    for (int j = 0; j < k; ++j) {
        int m = slots(rng);
        s.terms.push_back(qwk::make_term(grade(rng), m, random_poly(rng, m, 2)));
    }
    return qwk::normalize(std::move(s));
}

}  // namespace qwk::weyl
