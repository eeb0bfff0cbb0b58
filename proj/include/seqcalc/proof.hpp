#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqcalc/formula.hpp"

namespace seqcalc {

struct Sequent {
    std::vector<Formula> left;
    std::vector<Formula> right;
    bool operator==(const Sequent& o) const { return left == o.left && right == o.right; }
    bool operator!=(const Sequent& o) const { return !(*this == o); }
};

std::string to_string(const Sequent& s);
std::ostream& operator<<(std::ostream& os, const Sequent& s);
// "A, B |- C" with formulas in the given logic's syntax.
Sequent parse_sequent(std::string_view text, Logic logic);

enum class Rule : uint8_t {
    XL, XR, WL, WR, CL, CR,
    BangW, WhyW, BangC, WhyC, BangD, WhyD,
    WhyL,      // ?L^{!?}
    BangR,     // !R^{!?}
    BangWhyL,  // !?L^{!?}
    WhyBangR,  // ?!R^{!?}
    Id, Cut, CutWhy, CutBang,
    TTL, TTR, TTLBang, FFL, FFR, FFRWhy,
    TopL, TopR, BotL, BotR, OneR, ZeroL,
    AndL, AndR, AndLBang, OrL, OrR, OrRWhy, CImpL, CImpR,
    WithL, WithR, WithRWhy, PlusL, PlusR, PlusLBang,
    TensorL, TensorR, ParL, ParR, NegL, NegR, LDualL, LDualR,
    UImpL, UImpR,
    ClImpLBang, ClImpRBang, BangRBang,
    IImpLWhy, IImpRWhy, WhyLWhy,
    IImpL, IImpR,
    Dist,
    CutLn, CutRn, CutWB, CutLnWB, CutRnWB,
    Count_
};

constexpr int kRuleCount = static_cast<int>(Rule::Count_);

const char* rule_name(Rule r);
std::optional<Rule> parse_rule_name(std::string_view s);
int rule_arity(Rule r);
bool is_cut_family(Rule r);
bool is_internal(Rule r);  // multicut machinery of the elimination engine
bool is_structural_exchange(Rule r);

struct Params {
    int i = 0;       // branch index 1|2, 0 when unused
    int at = -1;     // exchange index, or single cut position for multicuts
    int split = -1;  // optional explicit context split (checked when present)
    Formula intro;   // introduced/instantiating formula
    std::vector<Formula> lctx, rctx;  // contexts of 1R/0L leaves
    std::vector<int> pos;             // multicut positions
    bool operator==(const Params& o) const {
        return i == o.i && at == o.at && split == o.split && intro == o.intro && lctx == o.lctx &&
               rctx == o.rctx && pos == o.pos;
    }
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

// Immutable rule application. The conclusion is computed from rule, params and premises
// at construction; an ill-formed application keeps an error instead.
struct ProofNode {
    Rule rule;
    Params params;
    std::vector<Proof> prem;
    std::optional<Sequent> concl;
    std::string error;

    bool ok() const { return concl.has_value(); }
    const Sequent& seq() const;  // throws if ill-formed
};

Proof mk(Rule r, Params params, std::vector<Proof> prem = {});
Proof mk(Rule r, std::vector<Proof> prem);

// Conclusion occurrence and its constituents one step up.
struct Occ {
    int prem = -1;  // premise index; -1 for the node's own conclusion
    bool right = false;
    int idx = 0;
    bool operator==(const Occ& o) const { return prem == o.prem && right == o.right && idx == o.idx; }
    bool operator<(const Occ& o) const {
        if (prem != o.prem) return prem < o.prem;
        if (right != o.right) return right < o.right;
        return idx < o.idx;
    }
};

struct Flow {
    // For every conclusion occurrence, the premise occurrences constituting it.
    std::vector<std::vector<Occ>> left, right;
    // Conclusion occurrences that are principal (introduced or acted upon by the rule).
    std::vector<Occ> principal;
    // Premise occurrences that are active (not context).
    std::vector<Occ> active;
    // Leaf links: pairs of conclusion occurrences that are mutual constituents (Id, Dist).
    std::vector<std::pair<Occ, Occ>> links;
    const std::vector<Occ>& of(bool right_side, int idx) const { return right_side ? right[idx] : left[idx]; }
};

// Requires n->ok().
Flow flow(const ProofNode& n);

class ProofParseError : public std::runtime_error {
public:
    ProofParseError(const std::string& msg, size_t line, size_t col)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    size_t line, col;
};

Proof parse_proof(std::string_view text, Logic logic);
std::string print_proof(const Proof& p, bool pretty = true);

int proof_size(const Proof& p);
bool cut_free(const Proof& p);
bool structurally_equal(const Proof& a, const Proof& b);

// Node at a path of premise indices; nullptr when out of range.
Proof node_at(const Proof& p, const std::vector<int>& path);
Proof replace_at(const Proof& p, const std::vector<int>& path, const Proof& sub);
std::string path_string(const std::vector<int>& path);

}  // namespace seqcalc
