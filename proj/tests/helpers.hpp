#pragma once

#include "qwk/algebra.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

inline qwk::Rat Q(const char* text) { return qwk::rat_from_string(text); }
inline qwk::GaussRat G(const char* text) { return qwk::gauss_from_string(text); }

inline qwk::MultiPoly var(const std::string& name, const std::vector<std::string>& vars, qwk::Truncation t = {}) {
    return qwk::MultiPoly::variable(name, vars, std::move(t));
}

inline qwk::MultiPoly constant(long c, const std::vector<std::string>& vars, qwk::Truncation t = {}) {
    return qwk::MultiPoly::constant(qwk::GaussRat(c), vars, std::move(t));
}

// Small random polynomial with Gaussian-integer coefficients.
inline qwk::MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-4, 4);
    qwk::MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        qwk::Exponents e(vars.size());
        for (auto& x : e) x = static_cast<qwk::Exponent>(deg(rng));
        p.add_term(e, qwk::GaussRat(qwk::Rat(coef(rng)), qwk::Rat(coef(rng) / 3)));
    }
    return p;
}

// Drops zero entries so maps from different routes compare by value.
inline std::map<int, qwk::GaussRat> nonzero(std::map<int, qwk::GaussRat> m) {
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    return m;
}

// Value at an integer point, by direct summation.
inline qwk::GaussRat value_at(const qwk::MultiPoly& p, const std::vector<long>& point) {
    qwk::GaussRat total;
    for (const auto& [e, c] : p.terms()) {
        qwk::Rat m(1);
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) m *= point[k];
        total += c * qwk::GaussRat(m);
    }
    return total;
}
