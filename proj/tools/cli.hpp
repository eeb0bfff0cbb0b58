#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqcalc::cli {

// Exit codes: 0 success/true/found, 1 check failed/false/exhausted, 2 parse or usage error,
// 3 internal limit (fuel or node budget).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqcalc::cli
