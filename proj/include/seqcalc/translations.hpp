#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqcalc/calculi.hpp"

namespace seqcalc {

enum class Edge : uint8_t {
    LkInc,   // T_? : LK -> INC
    IncIlc,  // T_! : INC -> ILC_iota
    LkClc,   // T_! : LK -> CLC
    ClcIlc,  // T_? : CLC -> ILC_iota
    LkIlcN,  // T_!? = T_! o T_? (via INC)
    LkIlcV,  // T_?! = T_? o T_! (via CLC)
    LljIlc,  // embedding, -o replaced by neg/par
    LjInc,   // embedding
};

const std::vector<Edge>& all_edges();
const char* edge_name(Edge e);
std::optional<Edge> parse_edge(std::string_view s);
Calc edge_source(Edge e);
Calc edge_target(Edge e);

class TranslationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws LanguageError when f is not a formula of the source logic.
Formula translate_formula(const Formula& f, Edge e);
// The stated image of a source end sequent: !T(D) |- T(G) for T_! edges, T(D) |- ?T(G) for T_? edges.
Sequent translate_sequent(const Sequent& s, Edge e);
// Checks p in the source calculus first; the result checks in the target with the image end sequent.
Proof translate_proof(const Proof& p, Edge e);
// Only LljIlc and LjInc.
Proof embed(const Proof& p, Edge e);

// Contracts surplus occurrences (with rule_l / rule_r) and permutes so the root becomes target.
Proof fit(const Proof& p, const Sequent& target, Rule rule_l, Rule rule_r);

// Canonical representative under the swap set and the identity rewrites; exchanges are rebuilt
// canonically. Preserves the end sequent and check status in c.
Proof permutation_normalize(const Proof& p, Calc c);

struct CommuteResult {
    bool ok = false;
    std::vector<int> path;  // first differing node of the two normal forms
    std::string detail;
    Proof via_inc, via_clc;  // normal forms
};

CommuteResult commute_check(const Proof& p);

}  // namespace seqcalc
