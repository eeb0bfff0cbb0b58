#pragma once

#include <stdexcept>
#include <vector>

#include "seqcalc/proof.hpp"

namespace seqcalc {

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws BuildError if p is ill-formed.
Proof checked(Proof p);

Proof leaf(Rule r);
Proof id(Formula a);
Proof un(Rule r, Proof p, Formula intro = {}, int i = 0);
Proof bin(Rule r, Proof a, Proof b, Formula intro = {}, int i = 0);
Proof xl(Proof p, int at);
Proof xr(Proof p, int at);

// Appends adjacent exchanges so the root becomes exactly target (a permutation of the current root).
Proof permute_to(const Proof& p, const Sequent& target);
// Moves the antecedent formula at idx to position to (others keep their order).
Proof move_left(const Proof& p, int idx, int to);
Proof move_right(const Proof& p, int idx, int to);
Proof left_to_end(const Proof& p, int idx);
Proof right_to_front(const Proof& p, int idx);

// Permutation helpers on sequent sides.
bool is_permutation_of(const std::vector<Formula>& a, const std::vector<Formula>& b);
bool sequent_permutation(const Sequent& a, const Sequent& b);

// Weakens/contracts to reach target, which must contain the root modulo order after the given
// structural steps; rules are chosen per side (e.g. WL or !W).
Proof weaken_left(const Proof& p, Formula f, Rule r);
Proof weaken_right(const Proof& p, Formula f, Rule r);
// Contracts two antecedent occurrences i and j of the same formula into one at the end.
Proof contract_left(const Proof& p, int i, int j, Rule r);
Proof contract_right(const Proof& p, int i, int j, Rule r);

}  // namespace seqcalc
