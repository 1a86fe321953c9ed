#pragma once

#include "qwk/algebra.hpp"

#include <string>
#include <vector>

namespace qwk {

struct Partition {
    std::vector<int> parts;

    int degree() const;
};

// Parses "2,1,1"; parts must be positive.
Partition parse_partition(const std::string& text);

struct HurwitzPoly {
    int g = 0;
    int n = 0;
    MultiPoly poly;  // in m1..mn
};

// r! (sum mu)^(r-1) [z^2g] prod S(mu_i z) / S(z), r = 2g-1+n.
HurwitzPoly one_part_polynomial(int g, int n);
Rat evaluate(const HurwitzPoly& h, const Partition& mu);

// The same closed form evaluated directly; also covers r = 0, where it is 1/d.
Rat one_part_number(int g, const Partition& mu);

Rat hurwitz_correlator(const std::vector<int>& d, int g);
Rat hurwitz_correlator_tau0(const std::vector<int>& rest, int g);

enum class ProductOrder { LeftToRight, RightToLeft };

// (1/d) #{transposition tuples (t_1..t_r) : s_0 t_1 .. t_r has cycle type mu},
// s_0 = (1 2 .. d).
Rat factorization_count(int g, const Partition& mu, ProductOrder order = ProductOrder::LeftToRight, int max_degree = 6);

long aut_factor(const Partition& mu);

}  // namespace qwk
