#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqcalc/proof.hpp"

namespace seqcalc {

enum class Calc : uint8_t { LK, LJ, LLK, LLJ, ILC, ILCi, ILCd, ILCr, INC, INCr, CLC, CLCr, LKr };

constexpr Calc kAllCalcs[] = {Calc::LK,  Calc::LJ,   Calc::LLK, Calc::LLJ,  Calc::ILC, Calc::ILCi, Calc::ILCd,
                              Calc::ILCr, Calc::INC, Calc::INCr, Calc::CLC, Calc::CLCr, Calc::LKr};

const char* calc_name(Calc c);
std::optional<Calc> parse_calc(std::string_view s);
Logic calc_logic(Calc c);
// Parent calculus of a rho-calculus; the calculus itself otherwise.
Calc calc_parent(Calc c);
bool is_rho(Calc c);
bool rule_allowed(Rule r, Calc c);
std::vector<Rule> calc_rules(Calc c);
bool intuitionistic(Calc c);  // right side of every sequent has length <= 1

struct CheckOptions {
    bool allow_internal = false;  // permit engine-internal multicut nodes
    bool global_predicate = true; // run the tractability predicate for rho-calculi
};

struct CheckReport {
    bool ok = false;
    Sequent end;
    std::vector<int> path;
    std::string kind;     // ill-formed | rule-not-in-calculus | language | side-condition | global-predicate
    std::string message;
    std::string schema;   // instantiated rule at the failing node
    std::string text() const;
};

CheckReport check_proof(const Proof& p, Calc c, const CheckOptions& opt = {});
// Local check of one node whose premises are already known to be valid.
std::optional<std::string> check_node(const ProofNode& n, Calc c, const CheckOptions& opt, std::string* kind = nullptr);

// Computed root sequent; throws std::runtime_error carrying the path of the first ill-formed node.
Sequent end_sequent(const Proof& p);
Sequent end_sequent(const Proof& p, Calc c);

int proof_depth(const Proof& p);
bool in_subcalculus(const Proof& p, Calc c, std::string_view marker);

std::string describe_node(const ProofNode& n);

}  // namespace seqcalc
