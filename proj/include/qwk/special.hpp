#pragma once

#include "qwk/algebra.hpp"

#include <vector>

namespace qwk {

// Truncated expansion of S(z) = sh(z/2)/(z/2) in the variable z.
MultiPoly s_series(int order, const std::string& var = "z");

// [z^{2g}] of S(x_1 z)..S(x_k z) / S(z), where each x_i is a polynomial over `vars`.
MultiPoly s_product_coefficient(const std::vector<MultiPoly>& args, const std::vector<std::string>& vars, int g);

// Inverse, exp and log of truncated series. `order` caps every variable of p
// that p does not already truncate; every variable must end up capped.
MultiPoly series_inverse(const MultiPoly& p, int order);
enum class SeriesMode { Exp, Log };
MultiPoly series_exp_log(const MultiPoly& p, int order, SeriesMode mode);

// Hyperbolic functions of a series argument with zero constant term, under
// the argument's own truncation.
MultiPoly series_sinh(const MultiPoly& arg);
MultiPoly series_cosh(const MultiPoly& arg);
MultiPoly series_exp(const MultiPoly& arg);

struct EulerianTable {
    std::vector<std::vector<Rat>> rows;  // rows[n][k] = number of permutations of n with k descents

    static EulerianTable build(int n_max);
};

// E_n(t) as a polynomial in t.
MultiPoly eulerian_polynomial(int n, const std::string& var = "t");

struct EhrhartPoly {
    MultiPoly poly;  // univariate in N
    int q = 0;
    std::vector<int> r;
};

EhrhartPoly ehrhart_convolution(const std::vector<int>& r);
Rat ehrhart_brute_force(const std::vector<int>& r, long N);

// Monomial-basis coefficients of C^r(N), cached; r is read as a multiset.
const std::vector<Rat>& ehrhart_coefficients(std::vector<int> r);

Rat binomial(long n, long k);
Rat factorial(long n);

}  // namespace qwk
