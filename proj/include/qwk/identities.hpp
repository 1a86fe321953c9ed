#pragma once

#include "qwk/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qwk {

struct IdentityReport {
    std::string name;
    std::string params;
    int order = 0;
    // Largest |re| + |im| over the coefficients of LHS - RHS.
    Rat max_abs_discrepancy{0};
    std::vector<IdentityReport> parts;

    bool passed() const;
};

std::string to_json(const IdentityReport& r);

// Largest |re| + |im| coefficient of a - b, truncations ignored.
Rat max_discrepancy(const MultiPoly& a, const MultiPoly& b);

IdentityReport check_carlitz(int d, int K);
IdentityReport check_eulerian_generating(int order);
IdentityReport check_sh_lemmas(int order);
IdentityReport check_sinh_formula(int n, const std::vector<int>& a, int b, int order);
IdentityReport check_products_of_exponentials(int n, const std::vector<int>& A, int order);
IdentityReport check_variational(std::uint64_t seed, int cases = 50);

// The acceptance grid of every identity above.
IdentityReport check_all_identities(int order = 8, int jobs = 1);

}  // namespace qwk
