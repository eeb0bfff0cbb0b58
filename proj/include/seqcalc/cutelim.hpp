#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcalc/purity.hpp"

namespace seqcalc {

struct CutSite {
    std::vector<int> path;
    Formula cut_formula;
    int rank = 0;
    int site_depth = 0;  // distance from the root
    int multiplicity = 1;
};

class CutElimError : public std::runtime_error {
public:
    CutElimError(std::string kind, const std::string& msg, std::vector<int> path = {})
        : std::runtime_error(kind + ": " + msg), kind(std::move(kind)), path(std::move(path)) {}
    std::string kind;  // no-matching-case | step-limit-exceeded | calculus-unsupported | invalid-site | precondition
    std::vector<int> path;
};

// Cut formula of a cut-family node; the ?B side for the mixed ?B / !B cuts.
Formula cut_formula(const ProofNode& n);
std::optional<CutSite> select_cut(const Proof& p);
// Throws CutElimError(invalid-site) when path does not name a cut-family node.
CutSite site_at(const Proof& p, const std::vector<int>& path);

// Replaces the cut at s by the equivalent multicut node; a chain Cut(q, Cut(q, r)) on the same
// formula folds into one CutL^n. Cut^? becomes CutR^1 against ?L^?, Cut^! becomes CutL^1 against !R^!.
Proof merge_multicut(const Proof& p, const CutSite& s);
// Expands a multicut node into consecutive binary cuts plus exchanges.
Proof unfold_multicut(const Proof& node);

struct StepInfo {
    std::string case_name;
    std::vector<int> path;
    int rank = 0;
    int depth = 0;
};
std::string format_step(const StepInfo& s);

// One local transformation at s. The end sequent is unchanged and the result checks in c
// with engine-internal multicut nodes allowed.
Proof cut_step(const Proof& p, const CutSite& s, Calc c, StepInfo* info = nullptr,
               PurityReading reading = PurityReading::Global);

struct CutElimOptions {
    long fuel = 1000000;
    PurityReading reading = PurityReading::Global;
    std::function<void(const StepInfo&, const Proof&)> on_step;
};

bool cutelim_supported(Calc c);
// Repeats cut_step at select_cut until the proof is cut-free.
Proof eliminate_cuts(const Proof& p, Calc c, const CutElimOptions& opt = {});

}  // namespace seqcalc
