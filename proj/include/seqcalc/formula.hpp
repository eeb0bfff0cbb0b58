#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqcalc {

enum class Op : uint8_t {
    Var, DualVar,
    Top, Bot, One, Zero, TT, FF,
    Bang, Why, Neg,
    Tensor, Par, With, Plus, And, Or,
    IImp,   // =>
    CImp,   // ==>
    UImp,   // -o (primitive only in ILL)
    ClImp,  // ->>
};

enum class Logic : uint8_t { CL, IL, CLL, ILL, ILLe, ILe, CLLm };

struct Node;

// Hash-consed formula handle: equal formulas share one node, so == is pointer equality.
class Formula {
public:
    Formula() = default;

    static Formula var(std::string_view name);
    static Formula dual_var(std::string_view name);
    static Formula constant(Op op);
    static Formula unary(Op op, Formula a);
    static Formula binary(Op op, Formula a, Formula b);

    static Formula top() { return constant(Op::Top); }
    static Formula bot() { return constant(Op::Bot); }
    static Formula one() { return constant(Op::One); }
    static Formula zero() { return constant(Op::Zero); }
    static Formula tt() { return constant(Op::TT); }
    static Formula ff() { return constant(Op::FF); }
    static Formula bang(Formula a) { return unary(Op::Bang, a); }
    static Formula why(Formula a) { return unary(Op::Why, a); }
    static Formula neg(Formula a) { return unary(Op::Neg, a); }

    bool valid() const { return n_ != nullptr; }
    Op op() const;
    const std::string& name() const;
    Formula lhs() const;  // operand of unary, left operand of binary
    Formula rhs() const;
    uint32_t id() const;
    int size() const;     // node count

    bool is(Op o) const { return n_ && op() == o; }
    bool is_bang() const { return is(Op::Bang); }
    bool is_why() const { return is(Op::Why); }
    bool is_unary() const;
    bool is_binary() const;
    bool is_atomic() const;

    bool operator==(const Formula& o) const { return n_ == o.n_; }
    bool operator!=(const Formula& o) const { return n_ != o.n_; }

    const Node* node() const { return n_; }

private:
    explicit Formula(const Node* n) : n_(n) {}
    const Node* n_ = nullptr;
    friend struct Interner;
};

// Deterministic structural order, independent of interning order.
int compare(const Formula& a, const Formula& b);
struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

struct FormulaHash {
    size_t operator()(const Formula& f) const { return std::hash<const void*>()(f.node()); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
    size_t pos;
};

class LanguageError : public std::runtime_error {
public:
    explicit LanguageError(const std::string& msg) : std::runtime_error(msg) {}
};

const char* logic_name(Logic l);
bool parse_logic(std::string_view s, Logic& out);
const char* op_name(Op op);

// Parses ASCII syntax and expands sugar for the given logic; throws ParseError or LanguageError.
Formula parse_formula(std::string_view text, Logic logic);
// Parses without the language check (sugar for ⤳ still depends on the logic).
Formula parse_formula_raw(std::string_view text, Logic logic);
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

bool op_in_language(Op op, Logic logic);
bool in_language(const Formula& f, Logic logic);
// First node that is not admissible, or an invalid handle when none.
Formula first_foreign_node(const Formula& f, Logic logic);

int rank(const Formula& f);
Formula linear_dual(const Formula& f);  // throws LanguageError outside CLL

// All subformulas including f itself, no duplicates, in preorder.
std::vector<Formula> subformulas(const Formula& f);
bool is_subformula(const Formula& sub, const Formula& f);

}  // namespace seqcalc
