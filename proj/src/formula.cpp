#include "seqcalc/formula.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace seqcalc {

struct Node {
    Op op;
    std::string name;
    const Node* a;
    const Node* b;
    uint32_t id;
    int size;
};

namespace {

struct Key {
    Op op;
    std::string name;
    const Node* a;
    const Node* b;
    bool operator==(const Key& o) const {
        return op == o.op && a == o.a && b == o.b && name == o.name;
    }
};

struct KeyHash {
    size_t operator()(const Key& k) const {
        size_t h = std::hash<std::string>()(k.name);
        h ^= std::hash<const void*>()(k.a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<const void*>()(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<size_t>(k.op) * 1315423911u;
        return h;
    }
};

}  // namespace

struct Interner {
    std::mutex mu;
    std::deque<Node> nodes;  // stable addresses
    std::unordered_map<Key, const Node*, KeyHash> table;

    static Interner& get() {
        static Interner inst;
        return inst;
    }

    Formula make(Op op, std::string name, const Node* a, const Node* b) {
        std::lock_guard<std::mutex> lock(mu);
        Key k{op, name, a, b};
        auto it = table.find(k);
        if (it != table.end()) return Formula(it->second);
        int sz = 1 + (a ? a->size : 0) + (b ? b->size : 0);
        nodes.push_back(Node{op, std::move(name), a, b, static_cast<uint32_t>(nodes.size()), sz});
        const Node* n = &nodes.back();
        table.emplace(std::move(k), n);
        return Formula(n);
    }
};

static bool is_const_op(Op op) {
    switch (op) {
        case Op::Top: case Op::Bot: case Op::One: case Op::Zero: case Op::TT: case Op::FF: return true;
        default: return false;
    }
}

static bool is_unary_op(Op op) { return op == Op::Bang || op == Op::Why || op == Op::Neg; }

static bool is_binary_op(Op op) { return static_cast<int>(op) >= static_cast<int>(Op::Tensor); }

Formula Formula::var(std::string_view name) {
    return Interner::get().make(Op::Var, std::string(name), nullptr, nullptr);
}

Formula Formula::dual_var(std::string_view name) {
    return Interner::get().make(Op::DualVar, std::string(name), nullptr, nullptr);
}

Formula Formula::constant(Op op) {
    if (!is_const_op(op)) throw std::invalid_argument("not a constant");
    return Interner::get().make(op, "", nullptr, nullptr);
}

Formula Formula::unary(Op op, Formula a) {
    if (!is_unary_op(op) || !a.valid()) throw std::invalid_argument("bad unary formula");
    return Interner::get().make(op, "", a.n_, nullptr);
}

Formula Formula::binary(Op op, Formula a, Formula b) {
    if (!is_binary_op(op) || !a.valid() || !b.valid()) throw std::invalid_argument("bad binary formula");
    return Interner::get().make(op, "", a.n_, b.n_);
}

Op Formula::op() const { return n_->op; }
const std::string& Formula::name() const { return n_->name; }
Formula Formula::lhs() const { return Formula(n_->a); }
Formula Formula::rhs() const { return Formula(n_->b); }
uint32_t Formula::id() const { return n_->id; }
int Formula::size() const { return n_->size; }
bool Formula::is_unary() const { return n_ && is_unary_op(n_->op); }
bool Formula::is_binary() const { return n_ && is_binary_op(n_->op); }
bool Formula::is_atomic() const { return n_ && (n_->op == Op::Var || n_->op == Op::DualVar); }

int compare(const Formula& x, const Formula& y) {
    if (x == y) return 0;
    if (x.op() != y.op()) return static_cast<int>(x.op()) < static_cast<int>(y.op()) ? -1 : 1;
    if (x.is_atomic()) return x.name() < y.name() ? -1 : 1;
    int c = compare(x.lhs(), y.lhs());
    if (c != 0 || !x.is_binary()) return c;
    return compare(x.rhs(), y.rhs());
}

const char* logic_name(Logic l) {
    switch (l) {
        case Logic::CL: return "CL";
        case Logic::IL: return "IL";
        case Logic::CLL: return "CLL";
        case Logic::ILL: return "ILL";
        case Logic::ILLe: return "ILLe";
        case Logic::ILe: return "ILe";
        case Logic::CLLm: return "CLL-";
    }
    return "?";
}

bool parse_logic(std::string_view s, Logic& out) {
    std::string t;
    for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "cl") out = Logic::CL;
    else if (t == "il") out = Logic::IL;
    else if (t == "cll") out = Logic::CLL;
    else if (t == "ill") out = Logic::ILL;
    else if (t == "ille" || t == "ill-e") out = Logic::ILLe;
    else if (t == "ile" || t == "il-e") out = Logic::ILe;
    else if (t == "cll-" || t == "cllm" || t == "cll-minus") out = Logic::CLLm;
    else return false;
    return true;
}

const char* op_name(Op op) {
    switch (op) {
        case Op::Var: return "variable";
        case Op::DualVar: return "dual variable";
        case Op::Top: return "top";
        case Op::Bot: return "bot";
        case Op::One: return "1";
        case Op::Zero: return "0";
        case Op::TT: return "tt";
        case Op::FF: return "ff";
        case Op::Bang: return "!";
        case Op::Why: return "?";
        case Op::Neg: return "neg";
        case Op::Tensor: return "tensor";
        case Op::Par: return "par";
        case Op::With: return "with";
        case Op::Plus: return "plus";
        case Op::And: return "and";
        case Op::Or: return "or";
        case Op::IImp: return "=>";
        case Op::CImp: return "==>";
        case Op::UImp: return "-o";
        case Op::ClImp: return "->>";
    }
    return "?";
}

bool op_in_language(Op op, Logic logic) {
    switch (logic) {
        case Logic::CL:
            return op == Op::Var || op == Op::TT || op == Op::FF || op == Op::And || op == Op::Or ||
                   op == Op::CImp;
        case Logic::IL:
            return op == Op::Var || op == Op::Top || op == Op::FF || op == Op::With || op == Op::Or ||
                   op == Op::IImp;
        case Logic::ILe:
            return op == Op::Var || op == Op::Top || op == Op::FF || op == Op::With || op == Op::Or ||
                   op == Op::IImp || op == Op::Why;
        case Logic::CLL:
            switch (op) {
                case Op::Var: case Op::DualVar: case Op::Top: case Op::Bot: case Op::One: case Op::Zero:
                case Op::Tensor: case Op::Par: case Op::With: case Op::Plus: case Op::Bang: case Op::Why:
                    return true;
                default: return false;
            }
        case Logic::ILL:
            switch (op) {
                case Op::Var: case Op::Top: case Op::Tensor: case Op::With: case Op::Plus: case Op::UImp:
                case Op::Bang:
                    return true;
                default: return false;
            }
        case Logic::ILLe:
            switch (op) {
                case Op::Var: case Op::Top: case Op::Bot: case Op::One: case Op::Zero: case Op::Tensor:
                case Op::Par: case Op::With: case Op::Plus: case Op::Neg: case Op::Bang: case Op::Why:
                    return true;
                default: return false;
            }
        case Logic::CLLm:
            switch (op) {
                case Op::Var: case Op::TT: case Op::Bot: case Op::And: case Op::Plus: case Op::ClImp:
                case Op::Bang:
                    return true;
                default: return false;
            }
    }
    return false;
}

Formula first_foreign_node(const Formula& f, Logic logic) {
    if (!op_in_language(f.op(), logic)) return f;
    if (f.is_unary() || f.is_binary()) {
        Formula r = first_foreign_node(f.lhs(), logic);
        if (r.valid()) return r;
    }
    if (f.is_binary()) return first_foreign_node(f.rhs(), logic);
    return Formula();
}

bool in_language(const Formula& f, Logic logic) { return !first_foreign_node(f, logic).valid(); }

int rank(const Formula& f) {
    if (f.is_unary()) return rank(f.lhs()) + 1;
    if (f.is_binary()) return rank(f.lhs()) + rank(f.rhs()) + 1;
    return 0;
}

Formula linear_dual(const Formula& f) {
    if (!in_language(f, Logic::CLL)) throw LanguageError("linear dual: not a CLL formula: " + to_string(f));
    switch (f.op()) {
        case Op::Var: return Formula::dual_var(f.name());
        case Op::DualVar: return Formula::var(f.name());
        case Op::Top: return Formula::bot();
        case Op::Bot: return Formula::top();
        case Op::One: return Formula::zero();
        case Op::Zero: return Formula::one();
        case Op::Tensor: return Formula::binary(Op::Par, linear_dual(f.lhs()), linear_dual(f.rhs()));
        case Op::Par: return Formula::binary(Op::Tensor, linear_dual(f.lhs()), linear_dual(f.rhs()));
        case Op::With: return Formula::binary(Op::Plus, linear_dual(f.lhs()), linear_dual(f.rhs()));
        case Op::Plus: return Formula::binary(Op::With, linear_dual(f.lhs()), linear_dual(f.rhs()));
        case Op::Bang: return Formula::why(linear_dual(f.lhs()));
        case Op::Why: return Formula::bang(linear_dual(f.lhs()));
        default: break;
    }
    throw LanguageError("linear dual: unexpected node");
}

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<const Node*> seen;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (!seen.insert(g.node()).second) return;
        out.push_back(g);
        if (g.is_unary() || g.is_binary()) go(g.lhs());
        if (g.is_binary()) go(g.rhs());
    };
    go(f);
    return out;
}

bool is_subformula(const Formula& sub, const Formula& f) {
    if (sub == f) return true;
    if (sub.size() >= f.size()) return false;
    if (f.is_unary() || f.is_binary()) {
        if (is_subformula(sub, f.lhs())) return true;
    }
    return f.is_binary() && is_subformula(sub, f.rhs());
}

// ---- printing

static void print(std::string& out, const Formula& f) {
    switch (f.op()) {
        case Op::Var: out += f.name(); return;
        case Op::DualVar: out += f.name(); out += '^'; return;
        case Op::Top: out += "top"; return;
        case Op::Bot: out += "bot"; return;
        case Op::One: out += "1"; return;
        case Op::Zero: out += "0"; return;
        case Op::TT: out += "tt"; return;
        case Op::FF: out += "ff"; return;
        case Op::Bang: out += '!'; print(out, f.lhs()); return;
        case Op::Why: out += '?'; print(out, f.lhs()); return;
        case Op::Neg: out += "neg "; print(out, f.lhs()); return;
        default: break;
    }
    // ¬A⅋B is printed back as its -o sugar.
    if (f.op() == Op::Par && f.lhs().is(Op::Neg)) {
        out += '(';
        print(out, f.lhs().lhs());
        out += " -o ";
        print(out, f.rhs());
        out += ')';
        return;
    }
    out += '(';
    print(out, f.lhs());
    out += ' ';
    out += op_name(f.op());
    out += ' ';
    print(out, f.rhs());
    out += ')';
}

std::string to_string(const Formula& f) {
    if (!f.valid()) return "<none>";
    std::string s;
    print(s, f);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---- parsing

namespace {

struct Parser {
    std::string_view s;
    size_t i = 0;
    Logic logic;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    bool ident_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    // Reads a bare word (identifier or digit constant) without consuming it.
    std::string_view peek_word() {
        ws();
        size_t j = i;
        if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) {
            while (j < s.size() && ident_char(s[j])) ++j;
        } else if (j < s.size() && (s[j] == '0' || s[j] == '1')) {
            ++j;
            if (j < s.size() && ident_char(s[j])) return {};
        }
        return s.substr(i, j - i);
    }

    bool accept(std::string_view tok) {
        ws();
        if (s.substr(i, tok.size()) != tok) return false;
        size_t j = i + tok.size();
        // word tokens must not run into further identifier characters
        if (std::isalpha(static_cast<unsigned char>(tok.back())) && j < s.size() && ident_char(s[j])) return false;
        i = j;
        return true;
    }

    static bool reserved(std::string_view w) {
        static const char* kw[] = {"top", "bot", "tt", "ff", "neg", "tensor", "par", "with", "plus",
                                   "and", "or", "star", "lstar"};
        for (const char* k : kw)
            if (w == k) return true;
        return false;
    }

    Formula formula() {
        ws();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '!') { ++i; return Formula::bang(formula()); }
        if (c == '?') { ++i; return Formula::why(formula()); }
        if (c == '(') return paren();
        std::string_view w = peek_word();
        if (w.empty()) fail(std::string("unexpected character '") + c + "'");
        if (w == "neg") { i += w.size(); return Formula::neg(formula()); }
        if (w == "top") { i += w.size(); return Formula::top(); }
        if (w == "bot") { i += w.size(); return Formula::bot(); }
        if (w == "tt") { i += w.size(); return Formula::tt(); }
        if (w == "ff") { i += w.size(); return Formula::ff(); }
        if (w == "1") { i += w.size(); return Formula::one(); }
        if (w == "0") { i += w.size(); return Formula::zero(); }
        if (reserved(w)) fail("keyword '" + std::string(w) + "' used as a formula");
        i += w.size();
        if (i < s.size() && s[i] == '^') {
            ++i;
            return Formula::dual_var(w);
        }
        return Formula::var(w);
    }

    Formula paren() {
        size_t open = i;
        ++i;
        ws();
        if (i < s.size() && s[i] == '~') {
            ++i;
            Formula a = formula();
            expect_close(open);
            return Formula::binary(Op::CImp, a, Formula::ff());
        }
        Formula a = formula();
        ws();
        Op op;
        bool postfix = false;
        if (accept("tensor")) op = Op::Tensor;
        else if (accept("par")) op = Op::Par;
        else if (accept("with")) op = Op::With;
        else if (accept("plus")) op = Op::Plus;
        else if (accept("and")) op = Op::And;
        else if (accept("or")) op = Op::Or;
        else if (accept("==>")) op = Op::CImp;
        else if (accept("=>")) op = Op::IImp;
        else if (accept("->>")) op = Op::ClImp;
        else if (accept("-o")) op = Op::UImp;
        else if (accept("lstar")) { op = Op::ClImp; postfix = true; }
        else if (accept("star")) { op = Op::IImp; postfix = true; }
        else fail("expected a binary connective");
        if (postfix) {
            expect_close(open);
            if (op == Op::IImp) return Formula::binary(Op::IImp, a, Formula::ff());
            return Formula::binary(Op::ClImp, a, Formula::bot());
        }
        Formula b = formula();
        expect_close(open);
        if (op == Op::UImp && logic == Logic::ILLe) return Formula::binary(Op::Par, Formula::neg(a), b);
        return Formula::binary(op, a, b);
    }

    void expect_close(size_t open) {
        ws();
        if (i >= s.size() || s[i] != ')') fail("expected ')' closing '(' at position " + std::to_string(open));
        ++i;
    }
};

}  // namespace

Formula parse_formula_raw(std::string_view text, Logic logic) {
    Parser p{text, 0, logic};
    Formula f = p.formula();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return f;
}

Formula parse_formula(std::string_view text, Logic logic) {
    Formula f = parse_formula_raw(text, logic);
    Formula bad = first_foreign_node(f, logic);
    if (bad.valid())
        throw LanguageError(std::string("connective '") + op_name(bad.op()) + "' not in " + logic_name(logic) +
                            " (node " + to_string(bad) + ")");
    return f;
}

}  // namespace seqcalc
