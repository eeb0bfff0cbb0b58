#include "seqcalc/proof.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace seqcalc {

// ---- sequents

std::string to_string(const Sequent& s) {
    std::string out;
    for (size_t k = 0; k < s.left.size(); ++k) {
        if (k) out += ", ";
        out += to_string(s.left[k]);
    }
    out += s.left.empty() ? "|-" : " |-";
    for (size_t k = 0; k < s.right.size(); ++k) {
        out += k ? ", " : " ";
        out += to_string(s.right[k]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Sequent& s) { return os << to_string(s); }

static std::vector<Formula> parse_list(std::string_view text, Logic logic, size_t offset) {
    std::vector<Formula> out;
    int depth = 0;
    size_t start = 0;
    auto flush = [&](size_t end) {
        std::string_view piece = text.substr(start, end - start);
        size_t a = 0, b = piece.size();
        while (a < b && std::isspace(static_cast<unsigned char>(piece[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(piece[b - 1]))) --b;
        if (a == b) {
            if (end == text.size() && out.empty()) return;
            throw ParseError("empty formula in list", offset + start);
        }
        try {
            out.push_back(parse_formula(piece.substr(a, b - a), logic));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), offset + start + a);
        }
    };
    for (size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0) {
            flush(k);
            start = k + 1;
        }
    }
    flush(text.size());
    return out;
}

Sequent parse_sequent(std::string_view text, Logic logic) {
    size_t t = text.find("|-");
    if (t == std::string_view::npos) throw ParseError("expected '|-' in sequent", 0);
    Sequent s;
    s.left = parse_list(text.substr(0, t), logic, 0);
    s.right = parse_list(text.substr(t + 2), logic, t + 2);
    return s;
}

// ---- rule table

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    int arity;
};

const RuleInfo kRules[] = {
    {Rule::XL, "xl", 1}, {Rule::XR, "xr", 1}, {Rule::WL, "wl", 1}, {Rule::WR, "wr", 1},
    {Rule::CL, "cl", 1}, {Rule::CR, "cr", 1},
    {Rule::BangW, "bang-w", 1}, {Rule::WhyW, "why-w", 1}, {Rule::BangC, "bang-c", 1},
    {Rule::WhyC, "why-c", 1}, {Rule::BangD, "bang-d", 1}, {Rule::WhyD, "why-d", 1},
    {Rule::WhyL, "why-l", 1}, {Rule::BangR, "bang-r", 1}, {Rule::BangWhyL, "bang-why-l", 1},
    {Rule::WhyBangR, "why-bang-r", 1},
    {Rule::Id, "id", 0}, {Rule::Cut, "cut", 2}, {Rule::CutWhy, "cut-why", 2}, {Rule::CutBang, "cut-bang", 2},
    {Rule::TTL, "tt-l", 1}, {Rule::TTR, "ttR", 0}, {Rule::TTLBang, "tt-l-bang", 1},
    {Rule::FFL, "ff-l", 0}, {Rule::FFR, "ff-r", 1}, {Rule::FFRWhy, "ff-r-why", 1},
    {Rule::TopL, "top-l", 1}, {Rule::TopR, "top-r", 0}, {Rule::BotL, "bot-l", 0}, {Rule::BotR, "bot-r", 1},
    {Rule::OneR, "one-r", 0}, {Rule::ZeroL, "zero-l", 0},
    {Rule::AndL, "and-l", 1}, {Rule::AndR, "and-r", 2}, {Rule::AndLBang, "and-l-bang", 1},
    {Rule::OrL, "or-l", 2}, {Rule::OrR, "or-r", 1}, {Rule::OrRWhy, "or-r-why", 1},
    {Rule::CImpL, "c-imp-l", 2}, {Rule::CImpR, "c-imp-r", 1},
    {Rule::WithL, "with-l", 1}, {Rule::WithR, "with-r", 2}, {Rule::WithRWhy, "with-r-why", 2},
    {Rule::PlusL, "plus-l", 2}, {Rule::PlusR, "plus-r", 1}, {Rule::PlusLBang, "plus-l-bang", 2},
    {Rule::TensorL, "tensor-l", 1}, {Rule::TensorR, "tensor-r", 2}, {Rule::ParL, "par-l", 2},
    {Rule::ParR, "par-r", 1}, {Rule::NegL, "neg-l", 1}, {Rule::NegR, "neg-r", 1},
    {Rule::LDualL, "l-dual-l", 1}, {Rule::LDualR, "l-dual-r", 1},
    {Rule::UImpL, "u-imp-l", 2}, {Rule::UImpR, "u-imp-r", 1},
    {Rule::ClImpLBang, "cl-imp-l-bang", 2}, {Rule::ClImpRBang, "cl-imp-r-bang", 1},
    {Rule::BangRBang, "bang-r-bang", 1},
    {Rule::IImpLWhy, "i-imp-l-why", 2}, {Rule::IImpRWhy, "i-imp-r-why", 1}, {Rule::WhyLWhy, "why-l-why", 1},
    {Rule::IImpL, "i-imp-l", 2}, {Rule::IImpR, "i-imp-r", 1},
    {Rule::Dist, "dist", 0},
    {Rule::CutLn, "cut-l-n", 2}, {Rule::CutRn, "cut-r-n", 2}, {Rule::CutWB, "cut-wb", 2},
    {Rule::CutLnWB, "cut-l-n-wb", 2}, {Rule::CutRnWB, "cut-r-n-wb", 2},
};

static_assert(sizeof(kRules) / sizeof(kRules[0]) == kRuleCount, "rule table incomplete");

}  // namespace

const char* rule_name(Rule r) { return kRules[static_cast<int>(r)].name; }
int rule_arity(Rule r) { return kRules[static_cast<int>(r)].arity; }

std::optional<Rule> parse_rule_name(std::string_view s) {
    if (s == "tt-r") return Rule::TTR;
    for (const auto& info : kRules)
        if (s == info.name) return info.rule;
    return std::nullopt;
}

bool is_cut_family(Rule r) {
    switch (r) {
        case Rule::Cut: case Rule::CutWhy: case Rule::CutBang: case Rule::CutLn: case Rule::CutRn:
        case Rule::CutWB: case Rule::CutLnWB: case Rule::CutRnWB:
            return true;
        default: return false;
    }
}

bool is_internal(Rule r) {
    switch (r) {
        case Rule::CutLn: case Rule::CutRn: case Rule::CutWB: case Rule::CutLnWB: case Rule::CutRnWB: return true;
        default: return false;
    }
}

bool is_structural_exchange(Rule r) { return r == Rule::XL || r == Rule::XR; }

// ---- conclusion and flow

namespace {

struct RuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void need(bool c, const std::string& msg) {
    if (!c) throw RuleError(msg);
}

bool all_bang(const std::vector<Formula>& v, size_t from = 0, size_t to = SIZE_MAX) {
    to = std::min(to, v.size());
    for (size_t k = from; k < to; ++k)
        if (!v[k].is_bang()) return false;
    return true;
}

bool all_why(const std::vector<Formula>& v, size_t from = 0, size_t to = SIZE_MAX) {
    to = std::min(to, v.size());
    for (size_t k = from; k < to; ++k)
        if (!v[k].is_why()) return false;
    return true;
}

struct Builder {
    const std::vector<const Sequent*>& ps;
    Sequent concl;
    Flow fl;

    void add(bool right, Formula f, std::vector<Occ> cons, bool principal = false) {
        auto& side = right ? concl.right : concl.left;
        auto& fs = right ? fl.right : fl.left;
        if (principal) fl.principal.push_back(Occ{-1, right, static_cast<int>(side.size())});
        side.push_back(f);
        fs.push_back(std::move(cons));
    }
    // Copies premise k's side positions [from, to) as context.
    void ctx(int k, bool right, size_t from, size_t to, bool into_right) {
        const auto& src = right ? ps[k]->right : ps[k]->left;
        for (size_t j = from; j < to; ++j) add(into_right, src[j], {Occ{k, right, static_cast<int>(j)}});
    }
    void ctxL(int k, size_t from, size_t to) { ctx(k, false, from, to, false); }
    void ctxR(int k, size_t from, size_t to) { ctx(k, true, from, to, true); }
    void act(int k, bool right, size_t idx) { fl.active.push_back(Occ{k, right, static_cast<int>(idx)}); }
    Occ occ(int k, bool right, size_t idx) const { return Occ{k, right, static_cast<int>(idx)}; }
};

const std::string kCtxBangL = "left context not of shape !Delta";
const std::string kCtxWhyR = "right context not of shape ?Gamma";

Op binop_for(Rule r) {
    switch (r) {
        case Rule::AndL: case Rule::AndR: case Rule::AndLBang: return Op::And;
        case Rule::OrL: case Rule::OrR: case Rule::OrRWhy: return Op::Or;
        case Rule::CImpL: case Rule::CImpR: return Op::CImp;
        case Rule::WithL: case Rule::WithR: case Rule::WithRWhy: return Op::With;
        case Rule::PlusL: case Rule::PlusR: case Rule::PlusLBang: return Op::Plus;
        case Rule::TensorL: case Rule::TensorR: return Op::Tensor;
        case Rule::ParL: case Rule::ParR: return Op::Par;
        case Rule::UImpL: case Rule::UImpR: return Op::UImp;
        case Rule::ClImpLBang: case Rule::ClImpRBang: return Op::ClImp;
        case Rule::IImpLWhy: case Rule::IImpRWhy: case Rule::IImpL: case Rule::IImpR: return Op::IImp;
        default: return Op::Var;
    }
}

std::string fs(const Formula& f) { return to_string(f); }

struct Derived {
    Sequent concl;
    Flow flow;
};

void check_positions(const std::vector<int>& pos, size_t n, const char* what) {
    for (size_t k = 0; k < pos.size(); ++k) {
        need(pos[k] >= 0 && static_cast<size_t>(pos[k]) < n, std::string(what) + " position out of range");
        need(k == 0 || pos[k] > pos[k - 1], std::string(what) + " positions must be strictly increasing");
    }
}

Derived derive(Rule r, const Params& p, const std::vector<const Sequent*>& ps) {
    need(static_cast<int>(ps.size()) == rule_arity(r),
         std::string("rule ") + rule_name(r) + " expects " + std::to_string(rule_arity(r)) + " premise(s), got " +
             std::to_string(ps.size()));
    Builder b{ps, {}, {}};
    const Sequent* P = ps.empty() ? nullptr : ps[0];
    const Sequent* Q = ps.size() > 1 ? ps[1] : nullptr;
    size_t nL = P ? P->left.size() : 0;
    size_t nR = P ? P->right.size() : 0;
    auto needIntro = [&]() { need(p.intro.valid(), std::string("rule ") + rule_name(r) + " needs :intro"); };
    auto lastL = [&]() -> Formula {
        need(nL >= 1, "premise antecedent is empty");
        return P->left[nL - 1];
    };
    auto firstR = [&]() -> Formula {
        need(nR >= 1, "premise succedent is empty");
        return P->right[0];
    };
    Op bop = binop_for(r);

    switch (r) {
        case Rule::XL: {
            need(p.at >= 0 && static_cast<size_t>(p.at) + 1 < nL, "exchange index out of range");
            size_t k = static_cast<size_t>(p.at);
            b.ctxL(0, 0, k);
            b.ctxL(0, k + 1, k + 2);
            b.ctxL(0, k, k + 1);
            b.ctxL(0, k + 2, nL);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::XR: {
            need(p.at >= 0 && static_cast<size_t>(p.at) + 1 < nR, "exchange index out of range");
            size_t k = static_cast<size_t>(p.at);
            b.ctxL(0, 0, nL);
            b.ctxR(0, 0, k);
            b.ctxR(0, k + 1, k + 2);
            b.ctxR(0, k, k + 1);
            b.ctxR(0, k + 2, nR);
            break;
        }
        case Rule::WL: case Rule::BangW: case Rule::TTL: case Rule::TTLBang: case Rule::TopL: {
            Formula a;
            if (r == Rule::TTL || r == Rule::TTLBang) a = Formula::tt();
            else if (r == Rule::TopL) a = Formula::top();
            else {
                needIntro();
                a = p.intro;
                if (r == Rule::BangW) need(a.is_bang(), "weakened formula " + fs(a) + " is not of shape !A");
            }
            if (r == Rule::TTLBang) need(all_bang(P->left), kCtxBangL);
            b.ctxL(0, 0, nL);
            b.add(false, a, {}, true);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::WR: case Rule::WhyW: case Rule::FFR: case Rule::FFRWhy: case Rule::BotR: {
            Formula a;
            if (r == Rule::FFR || r == Rule::FFRWhy) a = Formula::ff();
            else if (r == Rule::BotR) a = Formula::bot();
            else {
                needIntro();
                a = p.intro;
                if (r == Rule::WhyW) need(a.is_why(), "weakened formula " + fs(a) + " is not of shape ?B");
            }
            if (r == Rule::FFRWhy) need(all_why(P->right), kCtxWhyR);
            b.ctxL(0, 0, nL);
            b.add(true, a, {}, true);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::CL: case Rule::BangC: {
            need(nL >= 2 && P->left[nL - 1] == P->left[nL - 2], "contraction needs two equal last antecedent formulas");
            Formula a = P->left[nL - 1];
            if (r == Rule::BangC) need(a.is_bang(), "contracted formula " + fs(a) + " is not of shape !A");
            b.ctxL(0, 0, nL - 2);
            b.add(false, a, {b.occ(0, false, nL - 2), b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 2);
            b.act(0, false, nL - 1);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::CR: case Rule::WhyC: {
            need(nR >= 2 && P->right[0] == P->right[1], "contraction needs two equal first succedent formulas");
            Formula a = P->right[0];
            if (r == Rule::WhyC) need(a.is_why(), "contracted formula " + fs(a) + " is not of shape ?B");
            b.ctxL(0, 0, nL);
            b.add(true, a, {b.occ(0, true, 0), b.occ(0, true, 1)}, true);
            b.act(0, true, 0);
            b.act(0, true, 1);
            b.ctxR(0, 2, nR);
            break;
        }
        case Rule::BangD: case Rule::WhyL: case Rule::WhyLWhy: case Rule::BangWhyL: {
            Formula a = lastL();
            Formula out;
            if (r == Rule::BangD) out = Formula::bang(a);
            else if (r == Rule::BangWhyL) {
                need(a.is_bang(), "active formula " + fs(a) + " is not of shape !A");
                out = Formula::bang(Formula::why(a.lhs()));
            } else out = Formula::why(a);
            if (r == Rule::WhyL || r == Rule::BangWhyL) need(all_bang(P->left, 0, nL - 1), kCtxBangL);
            if (r == Rule::WhyL || r == Rule::BangWhyL || r == Rule::WhyLWhy) need(all_why(P->right), kCtxWhyR);
            b.ctxL(0, 0, nL - 1);
            b.add(false, out, {b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 1);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::WhyD: case Rule::BangR: case Rule::WhyBangR: case Rule::BangRBang: {
            Formula a = firstR();
            Formula out;
            if (r == Rule::WhyD) out = Formula::why(a);
            else if (r == Rule::WhyBangR) {
                need(a.is_why(), "active formula " + fs(a) + " is not of shape ?B");
                out = Formula::why(Formula::bang(a.lhs()));
            } else out = Formula::bang(a);
            if (r != Rule::WhyD) need(all_bang(P->left), kCtxBangL);
            if (r == Rule::BangR || r == Rule::WhyBangR) need(all_why(P->right, 1), kCtxWhyR);
            b.ctxL(0, 0, nL);
            b.add(true, out, {b.occ(0, true, 0)}, true);
            b.act(0, true, 0);
            b.ctxR(0, 1, nR);
            break;
        }
        case Rule::Id: case Rule::Dist: {
            needIntro();
            Formula a = p.intro, c = p.intro;
            if (r == Rule::Dist) {
                a = Formula::bang(Formula::why(p.intro));
                c = Formula::why(Formula::bang(p.intro));
            }
            b.add(false, a, {}, true);
            b.add(true, c, {}, true);
            b.fl.links.push_back({Occ{-1, false, 0}, Occ{-1, true, 0}});
            break;
        }
        case Rule::TTR: b.add(true, Formula::tt(), {}, true); break;
        case Rule::TopR: b.add(true, Formula::top(), {}, true); break;
        case Rule::FFL: b.add(false, Formula::ff(), {}, true); break;
        case Rule::BotL: b.add(false, Formula::bot(), {}, true); break;
        case Rule::OneR: case Rule::ZeroL: {
            for (const auto& f : p.lctx) b.add(false, f, {});
            if (r == Rule::ZeroL) b.add(false, Formula::zero(), {}, true);
            if (r == Rule::OneR) b.add(true, Formula::one(), {}, true);
            for (const auto& f : p.rctx) b.add(true, f, {});
            break;
        }
        case Rule::Cut: case Rule::CutWhy: case Rule::CutBang: case Rule::CutWB: {
            need(nR >= 1, "left premise succedent is empty");
            need(!Q->left.empty(), "right premise antecedent is empty");
            Formula lb = P->right[0], rb = Q->left.back();
            if (r == Rule::Cut) need(lb == rb, "cut formulas differ: " + fs(lb) + " vs " + fs(rb));
            if (r == Rule::CutWhy) {
                need(lb.is_why() && lb.lhs() == rb, "cut formulas do not match ?B / B: " + fs(lb) + " vs " + fs(rb));
                need(all_why(P->right) && all_why(Q->right), kCtxWhyR);
            }
            if (r == Rule::CutBang) {
                need(rb.is_bang() && rb.lhs() == lb, "cut formulas do not match B / !B: " + fs(lb) + " vs " + fs(rb));
                need(all_bang(P->left) && all_bang(Q->left, 0, Q->left.size() - 1), kCtxBangL);
            }
            if (r == Rule::CutWB)
                need(lb.is_why() && rb.is_bang() && lb.lhs() == rb.lhs(),
                     "cut formulas do not match ?B / !B: " + fs(lb) + " vs " + fs(rb));
            b.ctxL(0, 0, nL);
            b.ctxL(1, 0, Q->left.size() - 1);
            b.ctxR(0, 1, nR);
            b.ctxR(1, 0, Q->right.size());
            b.act(0, true, 0);
            b.act(1, false, Q->left.size() - 1);
            break;
        }
        case Rule::CutLn: case Rule::CutLnWB: {
            need(p.at >= 0 && static_cast<size_t>(p.at) < nR, "multicut position out of range");
            check_positions(p.pos, Q->left.size(), "multicut");
            Formula bf = P->right[p.at];
            for (int s : p.pos) {
                Formula g = Q->left[s];
                if (r == Rule::CutLn) need(g == bf, "multicut formulas differ: " + fs(bf) + " vs " + fs(g));
                else need(bf.is_why() && g.is_bang() && bf.lhs() == g.lhs(), "multicut formulas do not match ?B / !B");
            }
            size_t n = p.pos.size();
            for (size_t c = 0; c < n; ++c) b.ctxL(0, 0, nL);
            for (size_t j = 0; j < Q->left.size(); ++j)
                if (std::find(p.pos.begin(), p.pos.end(), static_cast<int>(j)) == p.pos.end()) b.ctxL(1, j, j + 1);
            for (size_t c = 0; c < n; ++c) {
                b.ctxR(0, 0, p.at);
                b.ctxR(0, p.at + 1, nR);
            }
            b.ctxR(1, 0, Q->right.size());
            b.act(0, true, p.at);
            for (int s : p.pos) b.act(1, false, s);
            break;
        }
        case Rule::CutRn: case Rule::CutRnWB: {
            need(p.at >= 0 && static_cast<size_t>(p.at) < Q->left.size(), "multicut position out of range");
            check_positions(p.pos, nR, "multicut");
            Formula bf = Q->left[p.at];
            for (int s : p.pos) {
                Formula g = P->right[s];
                if (r == Rule::CutRn) need(g == bf, "multicut formulas differ: " + fs(g) + " vs " + fs(bf));
                else need(g.is_why() && bf.is_bang() && g.lhs() == bf.lhs(), "multicut formulas do not match ?B / !B");
            }
            size_t n = p.pos.size();
            size_t qL = Q->left.size();
            b.ctxL(0, 0, nL);
            for (size_t c = 0; c < n; ++c) {
                b.ctxL(1, 0, p.at);
                b.ctxL(1, p.at + 1, qL);
            }
            for (size_t j = 0; j < nR; ++j)
                if (std::find(p.pos.begin(), p.pos.end(), static_cast<int>(j)) == p.pos.end()) b.ctxR(0, j, j + 1);
            for (size_t c = 0; c < n; ++c) b.ctxR(1, 0, Q->right.size());
            for (int s : p.pos) b.act(0, true, s);
            b.act(1, false, p.at);
            break;
        }
        case Rule::AndL: case Rule::AndLBang: case Rule::WithL: {
            needIntro();
            need(p.i == 1 || p.i == 2, "branch index :i must be 1 or 2");
            need(p.intro.op() == bop, "introduced formula " + fs(p.intro) + " has the wrong main connective");
            Formula a = lastL();
            Formula comp = p.i == 1 ? p.intro.lhs() : p.intro.rhs();
            need(a == comp, "premise formula " + fs(a) + " is not component " + std::to_string(p.i) + " of " +
                                fs(p.intro));
            if (r == Rule::AndLBang) need(all_bang(P->left, 0, nL - 1), kCtxBangL);
            b.ctxL(0, 0, nL - 1);
            b.add(false, p.intro, {b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 1);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::OrR: case Rule::OrRWhy: case Rule::PlusR: {
            needIntro();
            need(p.i == 1 || p.i == 2, "branch index :i must be 1 or 2");
            need(p.intro.op() == bop, "introduced formula " + fs(p.intro) + " has the wrong main connective");
            Formula a = firstR();
            Formula comp = p.i == 1 ? p.intro.lhs() : p.intro.rhs();
            need(a == comp, "premise formula " + fs(a) + " is not component " + std::to_string(p.i) + " of " +
                                fs(p.intro));
            if (r == Rule::OrRWhy) need(all_why(P->right, 1), kCtxWhyR);
            b.ctxL(0, 0, nL);
            b.add(true, p.intro, {b.occ(0, true, 0)}, true);
            b.act(0, true, 0);
            b.ctxR(0, 1, nR);
            break;
        }
        case Rule::AndR: case Rule::WithR: case Rule::WithRWhy: {
            need(nR >= 1 && !Q->right.empty(), "premise succedent is empty");
            need(P->left == Q->left, "premises have different antecedents");
            need(std::equal(P->right.begin() + 1, P->right.end(), Q->right.begin() + 1, Q->right.end()),
                 "premises have different succedent contexts");
            if (r == Rule::WithRWhy) need(all_why(P->right, 1), kCtxWhyR);
            for (size_t j = 0; j < nL; ++j) b.add(false, P->left[j], {b.occ(0, false, j), b.occ(1, false, j)});
            b.add(true, Formula::binary(bop, P->right[0], Q->right[0]), {b.occ(0, true, 0), b.occ(1, true, 0)}, true);
            b.act(0, true, 0);
            b.act(1, true, 0);
            for (size_t j = 1; j < nR; ++j) b.add(true, P->right[j], {b.occ(0, true, j), b.occ(1, true, j)});
            break;
        }
        case Rule::OrL: case Rule::PlusL: case Rule::PlusLBang: {
            need(nL >= 1 && !Q->left.empty(), "premise antecedent is empty");
            need(std::equal(P->left.begin(), P->left.end() - 1, Q->left.begin(), Q->left.end() - 1),
                 "premises have different antecedent contexts");
            need(P->right == Q->right, "premises have different succedents");
            if (r == Rule::PlusLBang) need(all_bang(P->left, 0, nL - 1), kCtxBangL);
            for (size_t j = 0; j + 1 < nL; ++j) b.add(false, P->left[j], {b.occ(0, false, j), b.occ(1, false, j)});
            b.add(false, Formula::binary(bop, P->left[nL - 1], Q->left.back()),
                  {b.occ(0, false, nL - 1), b.occ(1, false, Q->left.size() - 1)}, true);
            b.act(0, false, nL - 1);
            b.act(1, false, Q->left.size() - 1);
            for (size_t j = 0; j < nR; ++j) b.add(true, P->right[j], {b.occ(0, true, j), b.occ(1, true, j)});
            break;
        }
        case Rule::CImpL: {
            need(nR >= 1, "left premise succedent is empty");
            need(!Q->left.empty(), "right premise antecedent is empty");
            need(std::equal(P->left.begin(), P->left.end(), Q->left.begin(), Q->left.end() - 1),
                 "premises have different antecedent contexts");
            need(std::equal(P->right.begin() + 1, P->right.end(), Q->right.begin(), Q->right.end()),
                 "premises have different succedent contexts");
            for (size_t j = 0; j < nL; ++j) b.add(false, P->left[j], {b.occ(0, false, j), b.occ(1, false, j)});
            b.add(false, Formula::binary(bop, P->right[0], Q->left.back()),
                  {b.occ(0, true, 0), b.occ(1, false, Q->left.size() - 1)}, true);
            b.act(0, true, 0);
            b.act(1, false, Q->left.size() - 1);
            for (size_t j = 1; j < nR; ++j) b.add(true, P->right[j], {b.occ(0, true, j), b.occ(1, true, j - 1)});
            break;
        }
        case Rule::IImpL: {
            need(nR == 1, "left premise must have exactly one succedent formula");
            need(!Q->left.empty(), "right premise antecedent is empty");
            need(std::equal(P->left.begin(), P->left.end(), Q->left.begin(), Q->left.end() - 1),
                 "premises have different antecedent contexts");
            for (size_t j = 0; j < nL; ++j) b.add(false, P->left[j], {b.occ(0, false, j), b.occ(1, false, j)});
            b.add(false, Formula::binary(bop, P->right[0], Q->left.back()),
                  {b.occ(0, true, 0), b.occ(1, false, Q->left.size() - 1)}, true);
            b.act(0, true, 0);
            b.act(1, false, Q->left.size() - 1);
            b.ctxR(1, 0, Q->right.size());
            break;
        }
        case Rule::CImpR: case Rule::IImpR: case Rule::UImpR: case Rule::ClImpRBang: case Rule::IImpRWhy: {
            Formula a = lastL();
            Formula c = firstR();
            if (r == Rule::ClImpRBang) need(all_bang(P->left, 0, nL - 1), kCtxBangL);
            if (r == Rule::IImpRWhy) need(all_why(P->right, 1), kCtxWhyR);
            b.ctxL(0, 0, nL - 1);
            b.add(true, Formula::binary(bop, a, c), {b.occ(0, false, nL - 1), b.occ(0, true, 0)}, true);
            b.act(0, false, nL - 1);
            b.act(0, true, 0);
            b.ctxR(0, 1, nR);
            break;
        }
        case Rule::TensorL: {
            need(nL >= 2, "premise antecedent needs two formulas");
            b.ctxL(0, 0, nL - 2);
            b.add(false, Formula::binary(bop, P->left[nL - 2], P->left[nL - 1]),
                  {b.occ(0, false, nL - 2), b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 2);
            b.act(0, false, nL - 1);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::ParR: {
            need(nR >= 2, "premise succedent needs two formulas");
            b.ctxL(0, 0, nL);
            b.add(true, Formula::binary(bop, P->right[0], P->right[1]), {b.occ(0, true, 0), b.occ(0, true, 1)}, true);
            b.act(0, true, 0);
            b.act(0, true, 1);
            b.ctxR(0, 2, nR);
            break;
        }
        case Rule::TensorR: {
            need(nR >= 1 && !Q->right.empty(), "premise succedent is empty");
            need(p.split < 0 || static_cast<size_t>(p.split) == nL, "split point does not match left premise");
            b.ctxL(0, 0, nL);
            b.ctxL(1, 0, Q->left.size());
            b.add(true, Formula::binary(bop, P->right[0], Q->right[0]), {b.occ(0, true, 0), b.occ(1, true, 0)}, true);
            b.act(0, true, 0);
            b.act(1, true, 0);
            b.ctxR(0, 1, nR);
            b.ctxR(1, 1, Q->right.size());
            break;
        }
        case Rule::ParL: {
            need(nL >= 1 && !Q->left.empty(), "premise antecedent is empty");
            need(p.split < 0 || static_cast<size_t>(p.split) == nL - 1, "split point does not match left premise");
            b.ctxL(0, 0, nL - 1);
            b.ctxL(1, 0, Q->left.size() - 1);
            b.add(false, Formula::binary(bop, P->left[nL - 1], Q->left.back()),
                  {b.occ(0, false, nL - 1), b.occ(1, false, Q->left.size() - 1)}, true);
            b.act(0, false, nL - 1);
            b.act(1, false, Q->left.size() - 1);
            b.ctxR(0, 0, nR);
            b.ctxR(1, 0, Q->right.size());
            break;
        }
        case Rule::NegL: case Rule::LDualL: {
            Formula a = firstR();
            Formula out = r == Rule::NegL ? Formula::neg(a) : linear_dual(a);
            b.ctxL(0, 0, nL);
            b.add(false, out, {b.occ(0, true, 0)}, true);
            b.act(0, true, 0);
            b.ctxR(0, 1, nR);
            break;
        }
        case Rule::NegR: case Rule::LDualR: {
            Formula a = lastL();
            Formula out = r == Rule::NegR ? Formula::neg(a) : linear_dual(a);
            b.ctxL(0, 0, nL - 1);
            b.add(true, out, {b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 1);
            b.ctxR(0, 0, nR);
            break;
        }
        case Rule::UImpL: {
            need(nR == 1, "left premise must have exactly one succedent formula");
            need(!Q->left.empty(), "right premise antecedent is empty");
            b.ctxL(0, 0, nL);
            b.ctxL(1, 0, Q->left.size() - 1);
            b.add(false, Formula::binary(bop, P->right[0], Q->left.back()),
                  {b.occ(0, true, 0), b.occ(1, false, Q->left.size() - 1)}, true);
            b.act(0, true, 0);
            b.act(1, false, Q->left.size() - 1);
            b.ctxR(1, 0, Q->right.size());
            break;
        }
        case Rule::ClImpLBang: case Rule::IImpLWhy: {
            // P: Delta, B |- Gamma ; Q: Theta |- A, Xi
            need(nL >= 1, "left premise antecedent is empty");
            need(!Q->right.empty(), "right premise succedent is empty");
            if (r == Rule::ClImpLBang) need(all_bang(P->left, 0, nL - 1), kCtxBangL);
            if (r == Rule::IImpLWhy) need(all_why(Q->right, 1), kCtxWhyR);
            b.ctxL(0, 0, nL - 1);
            b.ctxL(1, 0, Q->left.size());
            Formula imp = Formula::binary(bop, Q->right[0], P->left[nL - 1]);
            if (r == Rule::ClImpLBang) imp = Formula::bang(imp);
            b.add(false, imp, {b.occ(1, true, 0), b.occ(0, false, nL - 1)}, true);
            b.act(0, false, nL - 1);
            b.act(1, true, 0);
            b.ctxR(0, 0, nR);
            b.ctxR(1, 1, Q->right.size());
            break;
        }
        case Rule::Count_: need(false, "invalid rule"); break;
    }
    return Derived{std::move(b.concl), std::move(b.fl)};
}

}  // namespace

const Sequent& ProofNode::seq() const {
    if (!concl) throw std::runtime_error(std::string("ill-formed ") + rule_name(rule) + " node: " + error);
    return *concl;
}

Proof mk(Rule r, Params params, std::vector<Proof> prem) {
    auto n = std::make_shared<ProofNode>();
    n->rule = r;
    n->params = std::move(params);
    n->prem = std::move(prem);
    std::vector<const Sequent*> ps;
    bool premises_ok = true;
    for (const auto& q : n->prem) {
        if (!q || !q->ok()) {
            premises_ok = false;
            break;
        }
        ps.push_back(&*q->concl);
    }
    if (!premises_ok) {
        n->error = "ill-formed premise";
        return n;
    }
    try {
        n->concl = derive(r, n->params, ps).concl;
    } catch (const std::exception& e) {
        n->error = e.what();
    }
    return n;
}

Proof mk(Rule r, std::vector<Proof> prem) { return mk(r, Params{}, std::move(prem)); }

Flow flow(const ProofNode& n) {
    std::vector<const Sequent*> ps;
    for (const auto& q : n.prem) ps.push_back(&q->seq());
    return derive(n.rule, n.params, ps).flow;
}

// ---- parsing

namespace {

struct PParser {
    std::string_view s;
    Logic logic;
    size_t i = 0;

    std::pair<size_t, size_t> linecol(size_t at) const {
        size_t line = 1, col = 1;
        for (size_t k = 0; k < at && k < s.size(); ++k) {
            if (s[k] == '\n') {
                ++line;
                col = 1;
            } else ++col;
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& msg, size_t at) {
        auto [l, c] = linecol(at);
        throw ProofParseError(msg, l, c);
    }

    void ws() {
        while (i < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            else if (s[i] == ';') {
                while (i < s.size() && s[i] != '\n') ++i;
            } else break;
        }
    }

    std::string_view word() {
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-' || s[j] == '_')) ++j;
        std::string_view w = s.substr(i, j - i);
        i = j;
        return w;
    }

    // Finds the extent of one formula starting at i: balanced parens, then postfix '^'.
    Formula formula() {
        ws();
        size_t start = i;
        size_t j = i;
        while (j < s.size() && (s[j] == '!' || s[j] == '?')) ++j;
        // "neg" prefix chains
        while (true) {
            size_t k = j;
            while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
            if (s.substr(k, 3) == "neg" && k + 3 < s.size() &&
                !(std::isalnum(static_cast<unsigned char>(s[k + 3])) || s[k + 3] == '_')) {
                j = k + 3;
                while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
                while (j < s.size() && (s[j] == '!' || s[j] == '?')) ++j;
                continue;
            }
            j = k;
            break;
        }
        if (j < s.size() && s[j] == '(') {
            int depth = 0;
            for (; j < s.size(); ++j) {
                if (s[j] == '(') ++depth;
                else if (s[j] == ')') {
                    if (--depth == 0) {
                        ++j;
                        break;
                    }
                } else if (s[j] == ';') fail("comment inside formula", j);
            }
            if (depth != 0) fail("unbalanced parentheses in formula", start);
        } else {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            if (j < s.size() && s[j] == '^') ++j;
        }
        if (j == start) fail("expected a formula", start);
        try {
            Formula f = parse_formula(s.substr(start, j - start), logic);
            i = j;
            return f;
        } catch (const ParseError& e) {
            fail(std::string("formula: ") + e.what(), start + e.pos);
        } catch (const LanguageError& e) {
            fail(std::string("formula: ") + e.what(), start);
        }
    }

    int integer() {
        ws();
        size_t start = i;
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
        }
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected an integer", start);
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 1000000) fail("integer too large", start);
            ++i;
        }
        return static_cast<int>(neg ? -v : v);
    }

    Proof proof() {
        ws();
        if (i >= s.size() || s[i] != '(') fail("expected '(' starting a proof node", i);
        size_t open = i;
        ++i;
        ws();
        size_t name_at = i;
        std::string_view name = word();
        auto rule = parse_rule_name(name);
        if (!rule) fail("unknown rule '" + std::string(name) + "'", name_at);
        Params params;
        std::vector<Proof> prem;
        if (*rule == Rule::Id || *rule == Rule::Dist) params.intro = formula();
        while (true) {
            ws();
            if (i >= s.size()) fail("unterminated proof node", open);
            if (s[i] == ')') {
                ++i;
                break;
            }
            if (s[i] == ':') {
                ++i;
                size_t kat = i;
                std::string_view key = word();
                if (key == "i") params.i = integer();
                else if (key == "at") params.at = integer();
                else if (key == "split") params.split = integer();
                else if (key == "intro") params.intro = formula();
                else if (key == "left") params.lctx.push_back(formula());
                else if (key == "right") params.rctx.push_back(formula());
                else if (key == "pos") params.pos.push_back(integer());
                else fail("unknown parameter ':" + std::string(key) + "'", kat);
                continue;
            }
            if (s[i] == '(') {
                prem.push_back(proof());
                continue;
            }
            fail("unexpected character", i);
        }
        if (static_cast<int>(prem.size()) != rule_arity(*rule))
            fail(std::string("rule ") + rule_name(*rule) + " expects " + std::to_string(rule_arity(*rule)) +
                     " subproof(s), got " + std::to_string(prem.size()),
                 open);
        return mk(*rule, std::move(params), std::move(prem));
    }
};

void print_node(std::string& out, const Proof& p, bool pretty, int indent) {
    out += '(';
    out += rule_name(p->rule);
    const Params& q = p->params;
    if (p->rule == Rule::Id || p->rule == Rule::Dist) {
        out += ' ';
        out += to_string(q.intro);
    }
    if (q.i) out += " :i " + std::to_string(q.i);
    if (q.at >= 0) out += " :at " + std::to_string(q.at);
    if (q.split >= 0) out += " :split " + std::to_string(q.split);
    if (q.intro.valid() && p->rule != Rule::Id && p->rule != Rule::Dist) out += " :intro " + to_string(q.intro);
    for (const auto& f : q.lctx) out += " :left " + to_string(f);
    for (const auto& f : q.rctx) out += " :right " + to_string(f);
    for (int k : q.pos) out += " :pos " + std::to_string(k);
    for (const auto& c : p->prem) {
        if (pretty) {
            out += '\n';
            out.append(static_cast<size_t>(indent + 2), ' ');
        } else out += ' ';
        print_node(out, c, pretty, indent + 2);
    }
    out += ')';
}

}  // namespace

Proof parse_proof(std::string_view text, Logic logic) {
    PParser pp{text, logic};
    Proof p = pp.proof();
    pp.ws();
    if (pp.i != text.size()) pp.fail("trailing input after proof", pp.i);
    return p;
}

std::string print_proof(const Proof& p, bool pretty) {
    std::string out;
    print_node(out, p, pretty, 0);
    return out;
}

int proof_size(const Proof& p) {
    int n = 1;
    for (const auto& c : p->prem) n += proof_size(c);
    return n;
}

bool cut_free(const Proof& p) {
    if (is_cut_family(p->rule)) return false;
    for (const auto& c : p->prem)
        if (!cut_free(c)) return false;
    return true;
}

bool structurally_equal(const Proof& a, const Proof& b) {
    if (a == b) return true;
    if (a->rule != b->rule || !(a->params == b->params) || a->prem.size() != b->prem.size()) return false;
    for (size_t k = 0; k < a->prem.size(); ++k)
        if (!structurally_equal(a->prem[k], b->prem[k])) return false;
    return true;
}

Proof node_at(const Proof& p, const std::vector<int>& path) {
    Proof cur = p;
    for (int k : path) {
        if (k < 0 || static_cast<size_t>(k) >= cur->prem.size()) return nullptr;
        cur = cur->prem[k];
    }
    return cur;
}

static Proof replace_rec(const Proof& p, const std::vector<int>& path, size_t depth, const Proof& sub) {
    if (depth == path.size()) return sub;
    auto prem = p->prem;
    prem.at(path[depth]) = replace_rec(p->prem.at(path[depth]), path, depth + 1, sub);
    return mk(p->rule, p->params, std::move(prem));
}

Proof replace_at(const Proof& p, const std::vector<int>& path, const Proof& sub) {
    return replace_rec(p, path, 0, sub);
}

std::string path_string(const std::vector<int>& path) {
    if (path.empty()) return "root";
    std::string s = "root";
    for (int k : path) s += "." + std::to_string(k);
    return s;
}

}  // namespace seqcalc
