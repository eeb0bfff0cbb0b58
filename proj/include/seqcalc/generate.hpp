#pragma once

#include <random>
#include <string>
#include <vector>

#include "seqcalc/calculi.hpp"
#include "seqcalc/search.hpp"

namespace seqcalc {

// Random formula of the given logic with at most max_size nodes over the atoms.
Formula random_formula(std::mt19937& rng, Logic logic, int max_size, const std::vector<std::string>& atoms = {"X", "Y"});

// Random LK proof of depth <= max_depth, built bottom-up from the LK rule set (no cut unless allowed).
Proof random_lk_proof(std::mt19937& rng, int max_depth, bool allow_cut = true);

// Every formula of the logic with exactly size nodes (atoms and constants count 1) over the atoms.
std::vector<Formula> enumerate_formulas(Logic logic, int size, const std::vector<std::string>& atoms);

// Cut-free proofs found by bounded search for random sequents (1-2 formulas per side, formulas of
// at most max_size nodes) in calculus c; stops after count proofs or 50 * count attempts.
std::vector<Proof> cutfree_pool(std::mt19937& rng, Calc c, int count, int max_size = 4, int depth_bound = 5);

// Joins pool proofs by exactly cuts cut_rule nodes (Cut, Cut^? or Cut^!), each on a formula shared by
// the current proof and a pool proof; nullptr when no instance fits.
Proof compose_with_cuts(std::mt19937& rng, const std::vector<Proof>& pool, int cuts, Rule cut_rule = Rule::Cut);

}  // namespace seqcalc
