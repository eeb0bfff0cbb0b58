#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "seqcalc/build.hpp"
#include "seqcalc/calculi.hpp"

namespace seqcalc::test {

inline std::string corpus_path(const std::string& name) { return std::string(SEQCALC_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Proof load(const std::string& name, Calc c) { return parse_proof(read_file(corpus_path(name)), calc_logic(c)); }

inline Formula F(const std::string& text, Logic l = Logic::ILLe) { return parse_formula(text, l); }
inline Sequent S(const std::string& text, Logic l = Logic::ILLe) { return parse_sequent(text, l); }

}  // namespace seqcalc::test
