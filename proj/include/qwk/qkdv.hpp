#pragma once

#include "qwk/symbols.hpp"

#include <map>
#include <vector>

namespace qwk {

struct BracketBudget {
    int max_hbar_grade = 0;
    // Compare the forward and reverse Ehrhart branches on every term.
    bool check_branches = true;
};

// H_d at epsilon = 0; max_grade < 0 keeps every grade.
FourierSymbol hamiltonian_density(int d, int max_grade = -1);
FourierSymbol integrate_hamiltonian(const FourierSymbol& h);

// (L*R - R*L)/hbar for a density L and an integrated R.
FourierSymbol bracket(const FourierSymbol& L, const FourierSymbol& R, const BracketBudget& budget);

// Evaluation-mode variant: only monomials that can still reach the multilinear
// coefficient after `later_brackets` further brackets are kept.
FourierSymbol bracket_for_evaluation(const FourierSymbol& L, const FourierSymbol& R, const BracketBudget& budget,
                                     int later_brackets);

// [..[H_{d1-1}, Hbar_{d2}], .., Hbar_{dn}] at the string point, per hbar grade up to g.
std::map<int, GaussRat> nested_bracket(const std::vector<int>& d_list, int g);

}  // namespace qwk
