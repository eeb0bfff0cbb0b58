#pragma once

#include <set>
#include <string>
#include <vector>

#include "seqcalc/calculi.hpp"

namespace seqcalc {

struct OccRef {
    std::vector<int> path;
    bool right = false;
    int idx = 0;
    bool operator<(const OccRef& o) const {
        if (path != o.path) return path < o.path;
        if (right != o.right) return right < o.right;
        return idx < o.idx;
    }
    bool operator==(const OccRef& o) const { return path == o.path && right == o.right && idx == o.idx; }
};

std::string to_string(const OccRef& o);

class PurityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Occurrences in the subtree at o.path that flow into o, including o itself.
std::set<OccRef> constituents(const Proof& p, const OccRef& o);

enum class PurityReading { Global, Constituent };

bool has_purity_definition(Calc c);
std::vector<Rule> purity_structural_rules(Calc c);

bool is_pure(const Proof& p, Calc c, const OccRef& o, PurityReading reading = PurityReading::Global);

struct TractabilityReport {
    bool ok = true;
    std::vector<int> path;
    int clause = 0;
    std::string message;
    std::string text() const;
};

TractabilityReport is_tractable(const Proof& p, Calc c, PurityReading reading = PurityReading::Global);

}  // namespace seqcalc
