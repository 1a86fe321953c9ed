#pragma once

#include "qwk/algebra.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qwk {

struct Comparison {
    std::string key;
    std::string lhs;
    std::string rhs;
    bool equal = false;
};

struct VerifyReport {
    std::string suite;
    std::map<std::string, long> bounds;
    std::vector<Comparison> comparisons;
    double seconds = 0;

    bool passed() const;
    // Null when everything passed.
    const Comparison* first_failure() const;
};

std::string to_json(const VerifyReport& r);

// Correlator grid: g <= g_max, 1 <= n <= n_max, sum d <= sum_max, where a
// negative sum_max means 4g + n per key.
struct GridBounds {
    int g_max = 2;
    int n_max = 3;
    int sum_max = -1;
};

std::vector<std::pair<int, std::vector<int>>> grid_keys(const GridBounds& b);

// Engine against the Hurwitz closed form wherever 2g-3+n >= 0.
VerifyReport verify_main_theorem(const GridBounds& b, int jobs);
// <tau_0 tau_d> = sum_i <tau_{d-e_i}>.
VerifyReport verify_string(const GridBounds& b, int jobs);
// Zero outside the level-0 band and on the wrong parity.
VerifyReport verify_levels(const GridBounds& b, int jobs);
// Closed form against aut * factorization count, both product orders.
VerifyReport verify_hurwitz_oracle(int d_max, int g_max);
// Symbolic bracket against normal-ordered commutators on modes |a| <= modes.
VerifyReport verify_bracket_oracle(std::uint64_t seed, int pairs, int modes);
// Tau symmetry and vanishing zero mode of bracket(H_d1, Hbar_d2).
VerifyReport verify_tau_structure(int d_max, int budget);
// Convolution polynomials against brute force, plus degree, for exponents >= r_min.
// Parity is checked when every exponent is positive; with a zero exponent values
// are compared from N = q on.
VerifyReport verify_ehrhart(int q_max, int r_sum_max, int n_max, int r_min = 0);
// H_-1, H_0 and the string lemma d(H_d)/dp_0 = H_{d-1}.
VerifyReport verify_hamiltonians(int d_max);
VerifyReport verify_identities(int order, int jobs);

}  // namespace qwk
