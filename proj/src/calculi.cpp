#include "seqcalc/calculi.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "seqcalc/purity.hpp"

namespace seqcalc {

namespace {

struct CalcInfo {
    Calc calc;
    const char* name;
    Logic logic;
};

const CalcInfo kCalcs[] = {
    {Calc::LK, "lk", Logic::CL},       {Calc::LJ, "lj", Logic::IL},          {Calc::LLK, "llk", Logic::CLL},
    {Calc::LLJ, "llj", Logic::ILL},    {Calc::ILC, "ilc", Logic::ILLe},      {Calc::ILCi, "ilc-iota", Logic::ILLe},
    {Calc::ILCd, "ilc-delta", Logic::ILLe}, {Calc::ILCr, "ilc-rho", Logic::ILLe}, {Calc::INC, "inc", Logic::ILe},
    {Calc::INCr, "inc-rho", Logic::ILe}, {Calc::CLC, "clc", Logic::CLLm},     {Calc::CLCr, "clc-rho", Logic::CLLm},
    {Calc::LKr, "lk-rho", Logic::CL},
};

using R = Rule;

const std::vector<Rule> kLK = {R::XL, R::XR, R::WL, R::WR, R::CL, R::CR, R::Id, R::Cut, R::TTL, R::TTR,
                               R::FFL, R::FFR, R::AndL, R::AndR, R::OrL, R::OrR, R::CImpL, R::CImpR};
const std::vector<Rule> kLJ = {R::XL, R::WL, R::WR, R::CL, R::Id, R::Cut, R::TopL, R::TopR, R::FFL,
                               R::FFR, R::WithL, R::WithR, R::OrL, R::OrR, R::IImpL, R::IImpR};
const std::vector<Rule> kLLK = {R::XL, R::XR, R::BangW, R::WhyW, R::BangC, R::WhyC, R::BangD, R::WhyD,
                                R::WhyL, R::BangR, R::Id, R::Cut, R::OneR, R::ZeroL, R::TopL, R::TopR,
                                R::BotL, R::BotR, R::TensorL, R::TensorR, R::WithL, R::WithR, R::ParL,
                                R::ParR, R::PlusL, R::PlusR, R::LDualL, R::LDualR};
const std::vector<Rule> kLLJ = {R::XL, R::Id, R::Cut, R::TopL, R::TopR, R::TensorL, R::TensorR, R::WithL,
                                R::WithR, R::PlusL, R::PlusR, R::BangW, R::BangC, R::BangD, R::BangR,
                                R::UImpL, R::UImpR};
const std::vector<Rule> kILC = {R::XL, R::XR, R::BangW, R::WhyW, R::BangC, R::WhyC, R::BangD, R::WhyD,
                                R::WhyL, R::BangR, R::Id, R::Cut, R::OneR, R::ZeroL, R::TopL, R::TopR,
                                R::BotL, R::BotR, R::TensorL, R::TensorR, R::WithL, R::WithR, R::ParL,
                                R::ParR, R::PlusL, R::PlusR, R::NegL, R::NegR};
const std::vector<Rule> kINC = {R::XL, R::XR, R::WL, R::WhyW, R::CL, R::WhyC, R::WhyD, R::WhyLWhy,
                                R::Id, R::CutWhy, R::TopL, R::TopR, R::FFL, R::FFRWhy, R::WithL,
                                R::WithRWhy, R::OrL, R::OrRWhy, R::IImpLWhy, R::IImpRWhy};
const std::vector<Rule> kCLC = {R::XL, R::XR, R::BangW, R::WR, R::BangC, R::CR, R::BangD, R::BangRBang,
                                R::Id, R::CutBang, R::TTLBang, R::TTR, R::BotL, R::BotR, R::AndLBang,
                                R::AndR, R::PlusLBang, R::PlusR, R::ClImpLBang, R::ClImpRBang};

std::vector<Rule> with(std::vector<Rule> v, std::initializer_list<Rule> extra) {
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
}

const std::vector<Rule>& rules_of(Calc c) {
    static const std::vector<Rule> ilci = with(kILC, {R::BangWhyL, R::WhyBangR});
    static const std::vector<Rule> ilcd = with(kILC, {R::Dist});
    switch (c) {
        case Calc::LK: case Calc::LKr: return kLK;
        case Calc::LJ: return kLJ;
        case Calc::LLK: return kLLK;
        case Calc::LLJ: return kLLJ;
        case Calc::ILC: return kILC;
        case Calc::ILCi: case Calc::ILCr: return ilci;
        case Calc::ILCd: return ilcd;
        case Calc::INC: case Calc::INCr: return kINC;
        case Calc::CLC: case Calc::CLCr: return kCLC;
    }
    return kLK;
}

}  // namespace

const char* calc_name(Calc c) { return kCalcs[static_cast<int>(c)].name; }
Logic calc_logic(Calc c) { return kCalcs[static_cast<int>(c)].logic; }

std::optional<Calc> parse_calc(std::string_view s) {
    std::string t;
    for (char ch : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    std::replace(t.begin(), t.end(), '_', '-');
    if (t == "ilc-i" || t == "ilci") return Calc::ILCi;
    if (t == "ilc-d" || t == "ilcd") return Calc::ILCd;
    if (t == "ilc-r" || t == "ilcr") return Calc::ILCr;
    for (const auto& info : kCalcs)
        if (t == info.name) return info.calc;
    return std::nullopt;
}

Calc calc_parent(Calc c) {
    switch (c) {
        case Calc::ILCr: return Calc::ILCi;
        case Calc::INCr: return Calc::INC;
        case Calc::CLCr: return Calc::CLC;
        case Calc::LKr: return Calc::LK;
        default: return c;
    }
}

bool is_rho(Calc c) { return calc_parent(c) != c; }

bool rule_allowed(Rule r, Calc c) {
    const auto& v = rules_of(c);
    return std::find(v.begin(), v.end(), r) != v.end();
}

std::vector<Rule> calc_rules(Calc c) { return rules_of(c); }

bool intuitionistic(Calc c) { return c == Calc::LJ || c == Calc::LLJ; }

std::string describe_node(const ProofNode& n) {
    std::string s = rule_name(n.rule);
    const Params& q = n.params;
    if (q.i) s += " :i " + std::to_string(q.i);
    if (q.at >= 0) s += " :at " + std::to_string(q.at);
    if (q.intro.valid()) s += " :intro " + to_string(q.intro);
    for (int k : q.pos) s += " :pos " + std::to_string(k);
    s += "  [";
    for (size_t k = 0; k < n.prem.size(); ++k) {
        if (k) s += " ; ";
        s += n.prem[k]->ok() ? to_string(*n.prem[k]->concl) : std::string("<ill-formed>");
    }
    s += "]  ==>  ";
    s += n.ok() ? to_string(*n.concl) : std::string("<") + n.error + ">";
    return s;
}

std::string CheckReport::text() const {
    if (ok) return "ok: " + to_string(end);
    std::string s = "violation (" + kind + ") at " + path_string(path) + ": " + message;
    if (!schema.empty()) s += "\n  rule instance: " + schema;
    return s;
}

std::optional<std::string> check_node(const ProofNode& n, Calc c, const CheckOptions& opt, std::string* kind) {
    auto fail = [&](const char* k, std::string msg) -> std::optional<std::string> {
        if (kind) *kind = k;
        return msg;
    };
    if (!n.ok()) return fail("ill-formed", n.error);
    bool internal_ok = opt.allow_internal && is_internal(n.rule);
    if (!internal_ok && !rule_allowed(n.rule, c))
        return fail("rule-not-in-calculus", std::string("rule ") + rule_name(n.rule) + " is not a rule of " + calc_name(c));
    const Sequent& s = *n.concl;
    Logic lg = calc_logic(c);
    for (int side = 0; side < 2; ++side) {
        for (const auto& f : side ? s.right : s.left) {
            Formula bad = first_foreign_node(f, lg);
            if (bad.valid())
                return fail("language", std::string("formula ") + to_string(f) + " uses '" + op_name(bad.op()) +
                                            "', not in " + logic_name(lg));
        }
    }
    if (intuitionistic(c) && s.right.size() > 1)
        return fail("side-condition", "sequent has " + std::to_string(s.right.size()) +
                                          " formulas on the right; at most one is allowed");
    if ((c == Calc::CLC || c == Calc::CLCr) && n.rule == Rule::BangD) {
        const auto& pl = n.prem[0]->seq().left;
        for (size_t k = 0; k + 1 < pl.size(); ++k)
            if (!pl[k].is_bang()) return fail("side-condition", "left context not of shape !Delta");
    }
    return std::nullopt;
}

namespace {

bool check_rec(const Proof& p, Calc c, const CheckOptions& opt, std::vector<int>& path, CheckReport& rep) {
    for (size_t k = 0; k < p->prem.size(); ++k) {
        path.push_back(static_cast<int>(k));
        bool ok = check_rec(p->prem[k], c, opt, path, rep);
        path.pop_back();
        if (!ok) return false;
    }
    std::string kind;
    auto err = check_node(*p, c, opt, &kind);
    if (err) {
        rep.ok = false;
        rep.path = path;
        rep.kind = kind;
        rep.message = *err;
        rep.schema = describe_node(*p);
        return false;
    }
    return true;
}

}  // namespace

CheckReport check_proof(const Proof& p, Calc c, const CheckOptions& opt) {
    CheckReport rep;
    std::vector<int> path;
    if (!check_rec(p, c, opt, path, rep)) return rep;
    rep.ok = true;
    rep.end = p->seq();
    if (is_rho(c) && opt.global_predicate) {
        TractabilityReport t = is_tractable(p, c);
        if (!t.ok) {
            rep.ok = false;
            rep.kind = "global-predicate";
            rep.path = t.path;
            rep.message = "not tractable: clause " + std::to_string(t.clause) + ": " + t.message;
            Proof at = node_at(p, t.path);
            if (at) rep.schema = describe_node(*at);
        }
    }
    return rep;
}

Sequent end_sequent(const Proof& p) {
    if (p->ok()) return *p->concl;
    std::vector<int> path;
    Proof cur = p;
    while (true) {
        bool descended = false;
        for (size_t k = 0; k < cur->prem.size(); ++k) {
            if (!cur->prem[k]->ok()) {
                path.push_back(static_cast<int>(k));
                cur = cur->prem[k];
                descended = true;
                break;
            }
        }
        if (!descended) break;
    }
    throw std::runtime_error("ill-formed proof at " + path_string(path) + ": " + cur->error);
}

Sequent end_sequent(const Proof& p, Calc c) {
    CheckReport r = check_proof(p, c);
    if (!r.ok) throw std::runtime_error(r.text());
    return r.end;
}

int proof_depth(const Proof& p) {
    int d = -1;
    for (const auto& q : p->prem) d = std::max(d, proof_depth(q));
    return d + 1;
}

bool in_subcalculus(const Proof& p, Calc c, std::string_view marker) {
    CheckReport r = check_proof(p, c);
    if (!r.ok) throw std::runtime_error("unchecked proof: " + r.text());
    bool want_bang = marker == "!" || marker == "!?";
    bool want_why = marker == "?" || marker == "!?";
    if (!want_bang && !want_why) throw std::invalid_argument("marker must be '!', '?' or '!?'");
    if (want_bang)
        for (const auto& f : r.end.left)
            if (!f.is_bang()) return false;
    if (want_why)
        for (const auto& f : r.end.right)
            if (!f.is_why()) return false;
    return true;
}

}  // namespace seqcalc
