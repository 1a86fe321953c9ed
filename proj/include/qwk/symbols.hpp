#pragma once

#include "qwk/algebra.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qwk {

enum class SymbolKind { Density, Integrated };

// One homogeneous piece hbar^grade * sum_a coeff(a_1..a_m) p_{a_1}..p_{a_m} e^{ix sum a}.
// `blocks` partitions the slots into consecutive groups inside which coeff is
// symmetric; singleton blocks assume nothing.
struct SymbolTerm {
    int grade = 0;
    int slots = 0;
    MultiPoly coeff;
    std::vector<int> blocks;
};

struct FourierSymbol {
    SymbolKind kind = SymbolKind::Density;
    std::vector<SymbolTerm> terms;
};

std::vector<std::string> slot_names(int m, const std::string& prefix = "a");

// Builds a term over slots a1..am; empty blocks means singleton blocks.
SymbolTerm make_term(int grade, int slots, const MultiPoly& coeff, std::vector<int> blocks = {});

// Merges terms with equal (grade, slots, blocks) and drops zero terms.
FourierSymbol normalize(FourierSymbol s);

FourierSymbol symmetrize(const FourierSymbol& s);
bool symbols_equal(const FourierSymbol& a, const FourierSymbol& b);

FourierSymbol d_x(const FourierSymbol& s);
FourierSymbol d_dp0(const FourierSymbol& s);
std::map<int, GaussRat> eval_string_point(const FourierSymbol& s);

// Sum_b e^{-ibx} d(zero mode)/dp_b: (g, m, phi) -> (g, m-1, m phi(a, -sum a)).
FourierSymbol mode_derivative(const FourierSymbol& s);

// Differential polynomials: (grade, sorted derivative orders) -> coefficient.
struct DiffPoly {
    std::map<std::pair<int, std::vector<int>>, GaussRat> terms;

    void add(int grade, std::vector<int> orders, const GaussRat& c);
    bool operator==(const DiffPoly& o) const { return terms == o.terms; }
    std::string to_string() const;
};

DiffPoly to_diff_poly(const FourierSymbol& s);
FourierSymbol from_diff_poly(const DiffPoly& d);

DiffPoly diff_poly_dx(const DiffPoly& d);
DiffPoly variational_derivative_u(const DiffPoly& d);
FourierSymbol variational_derivative(const DiffPoly& d);

std::string to_json(const FourierSymbol& s);

}  // namespace qwk
