#pragma once

#include <string>

#include "seqcalc/calculi.hpp"

namespace seqcalc {

struct SearchOptions {
    int contraction_budget = 2;  // a contraction may not leave more than budget + 1 copies of a formula on a side
    long max_nodes = 50000000;   // expansions before the search gives up with Verdict::Limit
};

struct SearchResult {
    enum class Verdict { Found, Exhausted, Limit };
    Verdict verdict = Verdict::Exhausted;
    Proof proof;  // set when found
    int bound = 0;
    long nodes_explored = 0;
    bool found() const { return verdict == Verdict::Found; }
};

const char* verdict_name(SearchResult::Verdict v);

// Depth without exchange nodes; the bound of search_cutfree is on this measure.
int logical_depth(const Proof& p);

// Cut-free backward search by iterative deepening up to depth_bound. Exchanges are implicit:
// found proofs end in exactly goal and carry the XL/XR chains. Throws LanguageError when a goal
// formula is outside the calculus's language.
SearchResult search_cutfree(const Sequent& goal, Calc c, int depth_bound, const SearchOptions& opt = {});

}  // namespace seqcalc
