#include "seqcalc/translations.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "seqcalc/build.hpp"

namespace seqcalc {

namespace {

struct EdgeInfo {
    Edge edge;
    const char* name;
    Calc source, target;
};

const EdgeInfo kEdges[] = {
    {Edge::LkInc, "lk-inc", Calc::LK, Calc::INC},     {Edge::IncIlc, "inc-ilc", Calc::INC, Calc::ILCi},
    {Edge::LkClc, "lk-clc", Calc::LK, Calc::CLC},     {Edge::ClcIlc, "clc-ilc", Calc::CLC, Calc::ILCi},
    {Edge::LkIlcN, "lk-ilc-n", Calc::LK, Calc::ILCi}, {Edge::LkIlcV, "lk-ilc-v", Calc::LK, Calc::ILCi},
    {Edge::LljIlc, "llj-ilc", Calc::LLJ, Calc::ILC},  {Edge::LjInc, "lj-inc", Calc::LJ, Calc::INC},
};

const EdgeInfo& info(Edge e) { return kEdges[static_cast<int>(e)]; }

using F = Formula;

F bin(Op op, F a, F b) { return F::binary(op, a, b); }
F lpar(F a, F b) { return bin(Op::Par, F::neg(a), b); }  // A -o B in ILLe

// T_? : CL -> ILe
F t_lk_inc(const F& f) {
    switch (f.op()) {
        case Op::TT: return F::why(F::top());
        case Op::FF: return F::ff();
        case Op::And: return bin(Op::With, F::why(t_lk_inc(f.lhs())), F::why(t_lk_inc(f.rhs())));
        case Op::Or: return bin(Op::Or, t_lk_inc(f.lhs()), t_lk_inc(f.rhs()));
        case Op::CImp: return bin(Op::IImp, t_lk_inc(f.lhs()), F::why(t_lk_inc(f.rhs())));
        default: return f;
    }
}

// T_! : ILe -> ILLe
F t_inc_ilc(const F& f) {
    switch (f.op()) {
        case Op::FF: return F::bang(F::bot());
        case Op::With: return bin(Op::With, t_inc_ilc(f.lhs()), t_inc_ilc(f.rhs()));
        case Op::Or: return bin(Op::Plus, F::bang(t_inc_ilc(f.lhs())), F::bang(t_inc_ilc(f.rhs())));
        case Op::IImp: return lpar(F::bang(t_inc_ilc(f.lhs())), t_inc_ilc(f.rhs()));
        case Op::Why: return F::why(t_inc_ilc(f.lhs()));
        default: return f;
    }
}

// T_! : CL -> CLL-
F t_lk_clc(const F& f) {
    switch (f.op()) {
        case Op::FF: return F::bang(F::bot());
        case Op::And: return bin(Op::And, t_lk_clc(f.lhs()), t_lk_clc(f.rhs()));
        case Op::Or: return bin(Op::Plus, F::bang(t_lk_clc(f.lhs())), F::bang(t_lk_clc(f.rhs())));
        case Op::CImp: return bin(Op::ClImp, F::bang(t_lk_clc(f.lhs())), t_lk_clc(f.rhs()));
        default: return f;
    }
}

// T_? : CLL- -> ILLe
F t_clc_ilc(const F& f) {
    switch (f.op()) {
        case Op::TT: return F::why(F::top());
        case Op::And: return bin(Op::With, F::why(t_clc_ilc(f.lhs())), F::why(t_clc_ilc(f.rhs())));
        case Op::Plus: return bin(Op::Plus, t_clc_ilc(f.lhs()), t_clc_ilc(f.rhs()));
        case Op::ClImp: return lpar(t_clc_ilc(f.lhs()), F::why(t_clc_ilc(f.rhs())));
        case Op::Bang: return F::bang(t_clc_ilc(f.lhs()));
        default: return f;
    }
}

F t_llj_ilc(const F& f) {
    if (f.is(Op::UImp)) return lpar(t_llj_ilc(f.lhs()), t_llj_ilc(f.rhs()));
    if (f.is_binary()) return F::binary(f.op(), t_llj_ilc(f.lhs()), t_llj_ilc(f.rhs()));
    if (f.is_unary()) return F::unary(f.op(), t_llj_ilc(f.lhs()));
    return f;
}

F map_formula(const F& f, Edge e) {
    switch (e) {
        case Edge::LkInc: return t_lk_inc(f);
        case Edge::IncIlc: return t_inc_ilc(f);
        case Edge::LkClc: return t_lk_clc(f);
        case Edge::ClcIlc: return t_clc_ilc(f);
        case Edge::LkIlcN: return t_inc_ilc(t_lk_inc(f));
        case Edge::LkIlcV: return t_clc_ilc(t_lk_clc(f));
        case Edge::LljIlc: return t_llj_ilc(f);
        case Edge::LjInc: return f;
    }
    return f;
}

bool bang_edge(Edge e) { return e == Edge::IncIlc || e == Edge::LkClc; }
bool why_edge(Edge e) { return e == Edge::LkInc || e == Edge::ClcIlc; }
bool both_edge(Edge e) { return e == Edge::LkIlcN || e == Edge::LkIlcV; }

std::vector<F> map_side(const std::vector<F>& v, Edge e, int wrap) {
    std::vector<F> out;
    out.reserve(v.size());
    for (const auto& f : v) {
        F g = map_formula(f, e);
        if (wrap == 1) g = F::bang(g);
        if (wrap == 2) g = F::why(g);
        out.push_back(g);
    }
    return out;
}

// ---- per-edge rule tables

using R = Rule;
using Prem = std::vector<Proof>;

[[noreturn]] void no_case(const ProofNode& n, Edge e) {
    throw TranslationError(std::string("rule ") + rule_name(n.rule) + " has no translation along " + edge_name(e));
}

const Sequent& ps(const ProofNode& n, int k) { return n.prem[k]->seq(); }

// LK -> INC
Proof lk_inc(const ProofNode& n, const Prem& t) {
    auto T = [](F f) { return t_lk_inc(f); };
    const Params& q = n.params;
    switch (n.rule) {
        case R::XL: return xl(t[0], q.at);
        case R::XR: return xr(t[0], q.at);
        case R::WL: return un(R::WL, t[0], T(q.intro));
        case R::WR: return un(R::WhyW, t[0], F::why(T(q.intro)));
        case R::CL: return un(R::CL, t[0]);
        case R::CR: return un(R::WhyC, t[0]);
        case R::Id: return un(R::WhyD, id(T(q.intro)));
        case R::Cut: return bin(R::CutWhy, t[0], t[1]);
        case R::TTL: return un(R::WhyLWhy, un(R::TopL, t[0]));
        case R::TTR: return un(R::WhyD, un(R::WhyD, leaf(R::TopR)));
        case R::FFL: return leaf(R::FFL);
        case R::FFR: return un(R::WhyD, un(R::FFRWhy, t[0]));
        case R::AndL: {
            F img = T(q.intro);
            return un(R::WithL, un(R::WhyLWhy, t[0]), img, q.i);
        }
        case R::AndR: return un(R::WhyD, bin(R::WithRWhy, t[0], t[1]));
        case R::OrL: return bin(R::OrL, t[0], t[1]);
        case R::OrR: {
            F img = T(q.intro);
            F bi = q.i == 1 ? img.lhs() : img.rhs();
            Proof blk = un(R::WhyD, un(R::OrRWhy, id(bi), img, q.i));
            return bin(R::CutWhy, t[0], blk);
        }
        case R::CImpL: {
            // t[0]: D |- ?A, ?G ; t[1]: D, B |- ?G
            F a = T(ps(n, 0).right[0]);
            F b = T(ps(n, 1).left.back());
            F wb = F::why(b);
            Proof d1 = bin(R::IImpLWhy, id(wb), id(a));
            d1 = un(R::WhyLWhy, xl(d1, 0));
            d1 = un(R::WhyD, un(R::IImpRWhy, d1));
            Proof rest = bin(R::IImpLWhy, un(R::WhyLWhy, t[1]), t[0]);
            return bin(R::CutWhy, d1, rest);
        }
        case R::CImpR: return un(R::WhyD, un(R::IImpRWhy, t[0]));
        default: no_case(n, Edge::LkInc);
    }
}

// INC -> ILC_iota
Proof inc_ilc(const ProofNode& n, const Prem& t) {
    auto T = [](F f) { return t_inc_ilc(f); };
    const Params& q = n.params;
    switch (n.rule) {
        case R::XL: return xl(t[0], q.at);
        case R::XR: return xr(t[0], q.at);
        case R::WL: return un(R::BangW, t[0], F::bang(T(q.intro)));
        case R::WhyW: return un(R::WhyW, t[0], T(q.intro));
        case R::CL: return un(R::BangC, t[0]);
        case R::WhyC: return un(R::WhyC, t[0]);
        case R::WhyD: return un(R::WhyD, t[0]);
        case R::Id: return un(R::BangD, id(T(q.intro)));
        case R::TopL: return un(R::BangD, un(R::TopL, t[0]));
        case R::TopR: return leaf(R::TopR);
        case R::FFL: return un(R::BangD, un(R::BangD, leaf(R::BotL)));
        case R::FFRWhy: return un(R::BangR, un(R::BotR, t[0]));
        case R::WithL: {
            F img = T(q.intro);
            F ai = q.i == 1 ? img.lhs() : img.rhs();
            Proof blk = un(R::BangR, un(R::BangD, un(R::WithL, id(ai), img, q.i)));
            return bin(R::Cut, blk, t[0]);
        }
        case R::WithRWhy: return bin(R::WithR, t[0], t[1]);
        case R::OrL: return un(R::BangD, bin(R::PlusL, t[0], t[1]));
        case R::OrRWhy: return un(R::PlusR, un(R::BangR, t[0]), T(q.intro), q.i);
        case R::IImpLWhy: {
            // t[0]: !D, !B |- G ; t[1]: !Th |- A, ?X
            F ba = F::bang(T(ps(n, 1).right[0]));
            F b = T(ps(n, 0).left.back());
            Proof l = bin(R::ParL, un(R::NegL, id(ba)), id(b));
            l = un(R::BangR, un(R::BangD, l));
            l = un(R::BangR, un(R::ParR, un(R::NegR, xl(l, 0))));
            Proof r = bin(R::ParL, un(R::NegL, un(R::BangR, t[1])), t[0]);
            r = un(R::BangD, r);
            return bin(R::Cut, l, r);
        }
        case R::IImpRWhy: return un(R::ParR, un(R::NegR, t[0]));
        case R::WhyLWhy: return un(R::BangWhyL, t[0]);
        case R::CutWhy: return bin(R::Cut, un(R::BangR, t[0]), un(R::BangWhyL, t[1]));
        default: no_case(n, Edge::IncIlc);
    }
}

// LK -> CLC
Proof lk_clc(const ProofNode& n, const Prem& t) {
    auto T = [](F f) { return t_lk_clc(f); };
    const Params& q = n.params;
    switch (n.rule) {
        case R::XL: return xl(t[0], q.at);
        case R::XR: return xr(t[0], q.at);
        case R::WL: return un(R::BangW, t[0], F::bang(T(q.intro)));
        case R::WR: return un(R::WR, t[0], T(q.intro));
        case R::CL: return un(R::BangC, t[0]);
        case R::CR: return un(R::CR, t[0]);
        case R::Id: return un(R::BangD, id(T(q.intro)));
        case R::Cut: return bin(R::CutBang, t[0], t[1]);
        case R::TTL: return un(R::BangD, un(R::TTLBang, t[0]));
        case R::TTR: return leaf(R::TTR);
        case R::FFL: return un(R::BangD, un(R::BangD, leaf(R::BotL)));
        case R::FFR: return un(R::BangRBang, un(R::BotR, t[0]));
        case R::AndL: {
            F img = T(q.intro);
            F ai = q.i == 1 ? img.lhs() : img.rhs();
            Proof blk = un(R::BangD, un(R::AndLBang, id(ai), img, q.i));
            return bin(R::CutBang, blk, t[0]);
        }
        case R::AndR: return bin(R::AndR, t[0], t[1]);
        case R::OrL: return un(R::BangD, bin(R::PlusLBang, t[0], t[1]));
        case R::OrR: return un(R::PlusR, un(R::BangRBang, t[0]), T(q.intro), q.i);
        case R::CImpL: {
            // t[0]: !D |- A, G ; t[1]: !D, !B |- G
            F a = T(ps(n, 0).right[0]);
            F b = T(ps(n, 1).left.back());
            F ba = F::bang(a);
            Proof e1 = bin(R::ClImpLBang, id(b), id(ba));
            e1 = un(R::ClImpRBang, xl(un(R::BangRBang, e1), 0));
            Proof rest = bin(R::ClImpLBang, t[1], un(R::BangRBang, t[0]));
            return bin(R::CutBang, e1, rest);
        }
        case R::CImpR: return un(R::ClImpRBang, t[0]);
        default: no_case(n, Edge::LkClc);
    }
}

// CLC -> ILC_iota
Proof clc_ilc(const ProofNode& n, const Prem& t) {
    auto T = [](F f) { return t_clc_ilc(f); };
    const Params& q = n.params;
    switch (n.rule) {
        case R::XL: return xl(t[0], q.at);
        case R::XR: return xr(t[0], q.at);
        case R::BangW: return un(R::BangW, t[0], T(q.intro));
        case R::WR: return un(R::WhyW, t[0], F::why(T(q.intro)));
        case R::BangC: return un(R::BangC, t[0]);
        case R::CR: return un(R::WhyC, t[0]);
        case R::BangD: return un(R::BangD, t[0]);
        case R::Id: return un(R::WhyD, id(T(q.intro)));
        case R::TTLBang: return un(R::WhyL, un(R::TopL, t[0]));
        case R::TTR: return un(R::WhyD, un(R::WhyD, leaf(R::TopR)));
        case R::BotL: return leaf(R::BotL);
        case R::BotR: return un(R::WhyD, un(R::BotR, t[0]));
        case R::AndLBang: return un(R::WithL, un(R::WhyL, t[0]), T(q.intro), q.i);
        case R::AndR: return un(R::WhyD, bin(R::WithR, t[0], t[1]));
        case R::PlusLBang: return bin(R::PlusL, t[0], t[1]);
        case R::PlusR: {
            F img = T(q.intro);
            F bi = q.i == 1 ? img.lhs() : img.rhs();
            Proof blk = un(R::WhyL, un(R::WhyD, un(R::PlusR, id(bi), img, q.i)));
            return bin(R::Cut, t[0], blk);
        }
        case R::ClImpLBang: {
            // t[0]: !D, B |- ?G ; t[1]: Th |- ?A, ?X
            F a = T(ps(n, 1).right[0]);
            F wb = F::why(T(ps(n, 0).left.back()));
            Proof l = bin(R::ParL, un(R::NegL, id(a)), id(wb));
            l = un(R::WhyL, xl(un(R::BangD, l), 0));
            l = un(R::ParR, un(R::NegR, l));
            Proof r = bin(R::ParL, un(R::NegL, t[1]), un(R::WhyL, t[0]));
            return bin(R::Cut, l, r);
        }
        case R::ClImpRBang: return un(R::WhyD, un(R::ParR, un(R::NegR, t[0])));
        case R::BangRBang: {
            F b = T(ps(n, 0).right[0]);
            Proof blk = un(R::BangWhyL, un(R::WhyD, id(F::bang(b))));
            return bin(R::Cut, un(R::BangR, t[0]), blk);
        }
        case R::CutBang: return bin(R::Cut, un(R::BangR, t[0]), un(R::BangWhyL, t[1]));
        default: no_case(n, Edge::ClcIlc);
    }
}

// LLJ -> ILC
Proof llj_ilc(const ProofNode& n, const Prem& t) {
    switch (n.rule) {
        case R::UImpR: return un(R::ParR, un(R::NegR, t[0]));
        case R::UImpL: return bin(R::ParL, un(R::NegL, t[0]), t[1]);
        default: {
            Params q = n.params;
            if (q.intro.valid()) q.intro = t_llj_ilc(q.intro);
            for (auto& f : q.lctx) f = t_llj_ilc(f);
            for (auto& f : q.rctx) f = t_llj_ilc(f);
            return checked(mk(n.rule, q, t));
        }
    }
}

// LJ -> INC
Proof lj_inc(const ProofNode& n, const Prem& t) {
    switch (n.rule) {
        case R::IImpL: return bin(R::IImpLWhy, t[1], t[0]);
        case R::IImpR: return un(R::IImpRWhy, t[0]);
        case R::WithR: return bin(R::WithRWhy, t[0], t[1]);
        case R::OrR: return un(R::OrRWhy, t[0], n.params.intro, n.params.i);
        case R::FFR: return un(R::FFRWhy, t[0]);
        case R::WR:
            throw TranslationError("rule wR has no counterpart in INC (INC has no right weakening on non-? formulas)");
        case R::Cut: throw TranslationError("rule cut has no counterpart in INC (only cut on ?B is available)");
        default: return checked(mk(n.rule, n.params, t));
    }
}

struct Step {
    std::function<Proof(const ProofNode&, const Prem&)> table;
    Rule contract_l, contract_r;
};

Step step_for(Edge e) {
    switch (e) {
        case Edge::LkInc: return {lk_inc, R::CL, R::WhyC};
        case Edge::IncIlc: return {inc_ilc, R::BangC, R::WhyC};
        case Edge::LkClc: return {lk_clc, R::BangC, R::CR};
        case Edge::ClcIlc: return {clc_ilc, R::BangC, R::WhyC};
        case Edge::LljIlc: return {llj_ilc, R::BangC, R::WhyC};
        case Edge::LjInc: return {lj_inc, R::CL, R::WhyC};
        default: throw TranslationError("composite edge has no single-step table");
    }
}

Proof run(const Proof& p, Edge e, const Step& st) {
    Prem t;
    t.reserve(p->prem.size());
    for (const auto& q : p->prem) t.push_back(run(q, e, st));
    Proof r;
    try {
        r = st.table(*p, t);
        return fit(r, translate_sequent(p->seq(), e), st.contract_l, st.contract_r);
    } catch (const BuildError& ex) {
        throw TranslationError(std::string("translating ") + rule_name(p->rule) + " along " + edge_name(e) + ": " +
                               ex.what());
    }
}

}  // namespace

const std::vector<Edge>& all_edges() {
    static const std::vector<Edge> v = {Edge::LkInc,  Edge::IncIlc, Edge::LkClc,  Edge::ClcIlc,
                                        Edge::LkIlcN, Edge::LkIlcV, Edge::LljIlc, Edge::LjInc};
    return v;
}

const char* edge_name(Edge e) { return info(e).name; }

std::optional<Edge> parse_edge(std::string_view s) {
    for (const auto& i : kEdges)
        if (s == i.name) return i.edge;
    return std::nullopt;
}

Calc edge_source(Edge e) { return info(e).source; }
Calc edge_target(Edge e) { return info(e).target; }

Formula translate_formula(const Formula& f, Edge e) {
    Logic src = calc_logic(edge_source(e));
    Formula bad = first_foreign_node(f, src);
    if (bad.valid())
        throw LanguageError("formula " + to_string(f) + " uses '" + op_name(bad.op()) + "', not in " + logic_name(src));
    return map_formula(f, e);
}

Sequent translate_sequent(const Sequent& s, Edge e) {
    for (const auto& f : s.left) translate_formula(f, e);
    for (const auto& f : s.right) translate_formula(f, e);
    if (bang_edge(e)) return {map_side(s.left, e, 1), map_side(s.right, e, 0)};
    if (why_edge(e)) return {map_side(s.left, e, 0), map_side(s.right, e, 2)};
    if (both_edge(e)) return {map_side(s.left, e, 1), map_side(s.right, e, 2)};
    return {map_side(s.left, e, 0), map_side(s.right, e, 0)};
}

Proof fit(const Proof& p, const Sequent& target, Rule rule_l, Rule rule_r) {
    Proof q = checked(p);
    auto surplus = [](const std::vector<F>& have, const std::vector<F>& want, int& i, int& j) {
        for (size_t a = 0; a < have.size(); ++a) {
            long need = std::count(want.begin(), want.end(), have[a]);
            long got = std::count(have.begin(), have.end(), have[a]);
            if (got <= need) continue;
            for (size_t b = a + 1; b < have.size(); ++b) {
                if (have[b] == have[a]) {
                    i = static_cast<int>(a);
                    j = static_cast<int>(b);
                    return true;
                }
            }
        }
        return false;
    };
    int i = 0, j = 0;
    while (surplus(q->seq().left, target.left, i, j)) q = contract_left(q, i, j, rule_l);
    while (surplus(q->seq().right, target.right, i, j)) q = contract_right(q, i, j, rule_r);
    return permute_to(q, target);
}

Proof embed(const Proof& p, Edge e) {
    if (e != Edge::LljIlc && e != Edge::LjInc) throw TranslationError("embed is defined for llj-ilc and lj-inc only");
    return translate_proof(p, e);
}

Proof translate_proof(const Proof& p, Edge e) {
    Calc src = edge_source(e);
    CheckReport rep = check_proof(p, src);
    if (!rep.ok) throw TranslationError(std::string("source proof does not check in ") + calc_name(src) + ": " + rep.text());
    if (e == Edge::LkIlcN) return translate_proof(translate_proof(p, Edge::LkInc), Edge::IncIlc);
    if (e == Edge::LkIlcV) return translate_proof(translate_proof(p, Edge::LkClc), Edge::ClcIlc);
    return run(p, e, step_for(e));
}

}  // namespace seqcalc
