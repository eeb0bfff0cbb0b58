#include "seqcalc/cutelim.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "seqcalc/build.hpp"

namespace seqcalc {

namespace {

using R = Rule;

const char* rule_label(Rule r) {
    switch (r) {
        case R::XL: return "XL";
        case R::XR: return "XR";
        case R::WL: return "WL";
        case R::WR: return "WR";
        case R::CL: return "CL";
        case R::CR: return "CR";
        case R::BangW: return "!W";
        case R::WhyW: return "?W";
        case R::BangC: return "!C";
        case R::WhyC: return "?C";
        case R::BangD: return "!D";
        case R::WhyD: return "?D";
        case R::WhyL: return "?L";
        case R::BangR: return "!R";
        case R::BangWhyL: return "!?L";
        case R::WhyBangR: return "?!R";
        case R::Id: return "Id";
        case R::Cut: return "Cut";
        case R::CutWhy: return "Cut?";
        case R::CutBang: return "Cut!";
        case R::TTL: return "ttL";
        case R::TTR: return "ttR";
        case R::TTLBang: return "ttL!";
        case R::FFL: return "ffL";
        case R::FFR: return "ffR";
        case R::FFRWhy: return "ffR?";
        case R::TopL: return "topL";
        case R::TopR: return "topR";
        case R::BotL: return "botL";
        case R::BotR: return "botR";
        case R::OneR: return "1R";
        case R::ZeroL: return "0L";
        case R::AndL: return "andL";
        case R::AndR: return "andR";
        case R::AndLBang: return "andL!";
        case R::OrL: return "orL";
        case R::OrR: return "orR";
        case R::OrRWhy: return "orR?";
        case R::CImpL: return "==>L";
        case R::CImpR: return "==>R";
        case R::WithL: return "&L";
        case R::WithR: return "&R";
        case R::WithRWhy: return "&R?";
        case R::PlusL: return "+L";
        case R::PlusR: return "+R";
        case R::PlusLBang: return "+L!";
        case R::TensorL: return "*L";
        case R::TensorR: return "*R";
        case R::ParL: return "parL";
        case R::ParR: return "parR";
        case R::NegL: return "negL";
        case R::NegR: return "negR";
        case R::LDualL: return "dualL";
        case R::LDualR: return "dualR";
        case R::UImpL: return "-oL";
        case R::UImpR: return "-oR";
        case R::ClImpLBang: return "->>L!";
        case R::ClImpRBang: return "->>R!";
        case R::BangRBang: return "!R!";
        case R::IImpLWhy: return "=>L?";
        case R::IImpRWhy: return "=>R?";
        case R::WhyLWhy: return "?L?";
        case R::IImpL: return "=>L";
        case R::IImpR: return "=>R";
        case R::Dist: return "Dist";
        case R::CutLn: return "CutL";
        case R::CutRn: return "CutR";
        case R::CutWB: return "Cut?!";
        case R::CutLnWB: return "CutL?!";
        case R::CutRnWB: return "CutR?!";
        case R::Count_: break;
    }
    return "?";
}

bool is_multicut(Rule r) {
    return r == R::CutLn || r == R::CutRn || r == R::CutLnWB || r == R::CutRnWB;
}

bool is_principal(const Flow& f, bool right, int idx) {
    for (const auto& o : f.principal)
        if (o.right == right && o.idx == idx) return true;
    return false;
}

std::vector<int> without(const std::vector<int>& v, int x) {
    std::vector<int> out;
    for (int y : v)
        if (y != x) out.push_back(y);
    return out;
}

int count_below(const std::vector<int>& v, int x) {
    return static_cast<int>(std::count_if(v.begin(), v.end(), [&](int y) { return y < x; }));
}

bool is_eta_identity(const Proof& p) {
    const Sequent& s = p->seq();
    if (s.left.size() != 1 || s.right.size() != 1 || s.left[0] != s.right[0]) return false;
    std::function<bool(const Proof&)> ok = [&](const Proof& q) {
        switch (q->rule) {
            case R::Id: return true;
            case R::XL: case R::XR: case R::BangD: case R::WhyD: case R::BangR: case R::WhyL: return ok(q->prem[0]);
            default: return false;
        }
    };
    return ok(p);
}

// A multicut: CutL^n has single side P (cut formula P.right[at]) and multi side Q (Q.left[pos]);
// CutR^n has single side Q (Q.left[at]) and multi side P (P.right[pos]).
struct MC {
    bool left = true;
    bool wb = false;
    Proof P, Q;
    int at = 0;
    std::vector<int> pos;

    int n() const { return static_cast<int>(pos.size()); }
    const Proof& single() const { return left ? P : Q; }
    const Proof& multi() const { return left ? Q : P; }
    void set_single(Proof x) { (left ? P : Q) = std::move(x); }
    void set_multi(Proof x) { (left ? Q : P) = std::move(x); }
    bool single_side_right() const { return left; }
    bool multi_side_right() const { return !left; }
    Rule rule() const { return left ? (wb ? R::CutLnWB : R::CutLn) : (wb ? R::CutRnWB : R::CutRn); }
};

MC read_mc(const ProofNode& n) {
    MC m;
    m.left = n.rule == R::CutLn || n.rule == R::CutLnWB;
    m.wb = n.rule == R::CutLnWB || n.rule == R::CutRnWB;
    m.P = n.prem[0];
    m.Q = n.prem[1];
    m.at = n.params.at;
    m.pos = n.params.pos;
    return m;
}

// With one copy, CutL^1 and CutR^1 coincide.
MC flip(const MC& m) {
    MC f = m;
    f.left = !m.left;
    f.at = m.pos[0];
    f.pos = {m.at};
    return f;
}

// Conclusion index of a multi-side context occurrence.
int multi_index(const MC& m, bool right, int idx) {
    int n = m.n();
    if (m.left) {
        if (!right) return n * static_cast<int>(m.P->seq().left.size()) + idx - count_below(m.pos, idx);
        return n * (static_cast<int>(m.P->seq().right.size()) - 1) + idx;
    }
    if (!right) return idx;
    return idx - count_below(m.pos, idx);
}

// Conclusion index of a single-side context occurrence in copy c.
int single_index(const MC& m, bool right, int idx, int c) {
    if (m.left) {
        if (!right) return c * static_cast<int>(m.P->seq().left.size()) + idx;
        return c * (static_cast<int>(m.P->seq().right.size()) - 1) + idx - (idx > m.at ? 1 : 0);
    }
    int pl = static_cast<int>(m.P->seq().left.size());
    int pr = static_cast<int>(m.P->seq().right.size()) - m.n();
    if (!right) return pl + c * (static_cast<int>(m.Q->seq().left.size()) - 1) + idx - (idx > m.at ? 1 : 0);
    return pr + c * static_cast<int>(m.Q->seq().right.size()) + idx;
}

// Constituents in premise k of the given conclusion occurrences.
std::vector<int> map_to_premise(const Flow& f, bool right, const std::vector<int>& occs, int k) {
    std::vector<int> out;
    for (int j : occs)
        for (const auto& o : f.of(right, j))
            if (o.prem == k && o.right == right) out.push_back(o.idx);
    std::sort(out.begin(), out.end());
    return out;
}

Proof unfold_impl(const Proof& node, bool internal) {
    MC m = read_mc(*node);
    auto cut = [&](const Proof& a, const Proof& b) {
        if (!internal) return checked(mk(m.wb ? R::CutWB : R::Cut, Params{}, {a, b}));
        Params q;
        q.at = 0;
        q.pos = {static_cast<int>(b->seq().left.size()) - 1};
        return checked(mk(m.wb ? R::CutLnWB : R::CutLn, q, {a, b}));
    };
    Proof x;
    if (m.left) {
        Proof p = right_to_front(m.P, m.at);
        int pl = static_cast<int>(p->seq().left.size());
        x = m.Q;
        std::vector<int> rem = m.pos;
        while (!rem.empty()) {
            int r = rem.back();
            rem.pop_back();
            x = cut(p, left_to_end(x, r));
            for (int& y : rem) y += pl;
        }
    } else {
        Proof q = left_to_end(m.Q, m.at);
        x = m.P;
        std::vector<int> rem = m.pos;
        while (!rem.empty()) {
            int r = rem.front();
            rem.erase(rem.begin());
            x = cut(right_to_front(x, r), q);
            for (int& y : rem) y -= 1;
        }
    }
    return permute_to(x, node->seq());
}

struct Reject {};

class Engine {
public:
    Engine(Calc c, PurityReading rd) : c_(c), rd_(rd) {}

    std::string name;

    Proof step(const Proof& N) {
        goal_ = N->seq();
        MC m = read_mc(*N);
        if (m.n() == 0) {
            name = "empty-multicut";
            return fit(m.multi());
        }
        if (Proof r = guard([&] { return exchanges(m); })) return r;
        if (Proof r = guard([&] { return identity(m); })) return r;
        if (Proof r = guard([&] { return attempt(m); })) return r;
        if (m.n() == 1)
            if (Proof r = guard([&] { return attempt(flip(m)); })) return r;
        if (m.n() >= 2)
            if (Proof r = guard([&] { return split(m); })) return r;
        if (m.n() == 1 && !m.wb) {
            if (is_eta_identity(m.single())) {
                name = "eta-identity-cut";
                return fit(m.multi());
            }
            if (is_eta_identity(m.multi())) {
                name = "eta-identity-cut";
                return fit(m.single());
            }
        }
        return nullptr;
    }

private:
    Calc c_;
    PurityReading rd_;
    Sequent goal_;

    Proof guard(const std::function<Proof()>& f) {
        try {
            return f();
        } catch (const Reject&) {
            return nullptr;
        } catch (const BuildError&) {
            return nullptr;
        }
    }

    Proof fit(const Proof& x) const {
        if (!x || !sequent_permutation(x->seq(), goal_)) throw Reject{};
        return permute_to(x, goal_);
    }

    Proof node(Rule r, Params q, std::vector<Proof> prem) const {
        Proof n = mk(r, std::move(q), std::move(prem));
        if (!n->ok()) throw Reject{};
        if (check_node(*n, c_, CheckOptions{true, false})) throw Reject{};
        return n;
    }

    Proof build(const MC& m) const {
        if (m.n() == 0) return m.multi();
        std::vector<int> pos = m.pos;
        std::sort(pos.begin(), pos.end());
        Params q;
        q.at = m.at;
        q.pos = pos;
        return node(m.rule(), q, {m.P, m.Q});
    }

    // Single cut of S.right[s] against T.left[t]; its MC is returned through out.
    Proof cut1(const Proof& S, int s, const Proof& T, int t, bool wb = false, MC* out = nullptr) const {
        MC m;
        m.left = true;
        m.wb = wb;
        m.P = S;
        m.Q = T;
        m.at = s;
        m.pos = {t};
        if (out) *out = m;
        return build(m);
    }

    // Context sorted, left actives at the end and right actives at the front, in the given order.
    static Proof arrange(const Proof& x, const std::vector<int>& aL, const std::vector<int>& aR) {
        const Sequent& s = x->seq();
        std::vector<Formula> cl, cr;
        for (int i = 0; i < static_cast<int>(s.left.size()); ++i)
            if (std::find(aL.begin(), aL.end(), i) == aL.end()) cl.push_back(s.left[i]);
        for (int i = 0; i < static_cast<int>(s.right.size()); ++i)
            if (std::find(aR.begin(), aR.end(), i) == aR.end()) cr.push_back(s.right[i]);
        std::stable_sort(cl.begin(), cl.end(), FormulaLess{});
        std::stable_sort(cr.begin(), cr.end(), FormulaLess{});
        Sequent t;
        t.left = cl;
        for (int i : aL) t.left.push_back(s.left[i]);
        for (int i : aR) t.right.push_back(s.right[i]);
        t.right.insert(t.right.end(), cr.begin(), cr.end());
        return permute_to(x, t);
    }

    // Reapplies the rule of x to arranged premises.
    Proof reapply(const Proof& x, std::vector<Proof> prems) const {
        Params q = x->params;
        q.split = -1;
        if (is_multicut(x->rule)) {
            if (x->params.pos.size() != 1) throw Reject{};
            if (x->rule == R::CutLn || x->rule == R::CutLnWB) {
                q.at = 0;
                q.pos = {static_cast<int>(prems[1]->seq().left.size()) - 1};
            } else {
                q.at = static_cast<int>(prems[1]->seq().left.size()) - 1;
                q.pos = {0};
            }
        }
        return node(x->rule, q, std::move(prems));
    }

    static std::pair<std::vector<int>, std::vector<int>> actives_of(const Flow& f, int k) {
        std::vector<int> aL, aR;
        for (const auto& o : f.active)
            if (o.prem == k) (o.right ? aR : aL).push_back(o.idx);
        std::sort(aL.begin(), aL.end());
        std::sort(aR.begin(), aR.end());
        return {aL, aR};
    }

    Proof rebuild_leaf(const Proof& x) const {
        if (x->rule != R::OneR && x->rule != R::ZeroL) throw Reject{};
        Params q;
        Formula k = x->rule == R::OneR ? Formula::one() : Formula::zero();
        auto& side = x->rule == R::OneR ? goal_.right : goal_.left;
        auto it = std::find(side.begin(), side.end(), k);
        if (it == side.end()) throw Reject{};
        q.lctx = goal_.left;
        q.rctx = goal_.right;
        auto& ctx = x->rule == R::OneR ? q.rctx : q.lctx;
        ctx.erase(ctx.begin() + (it - side.begin()));
        return fit(node(x->rule, q, {}));
    }

    // A multicut rule with more than one copy is first unfolded into single multicuts.
    Proof unfold_side(MC m, bool multi_side) {
        Proof x = multi_side ? m.multi() : m.single();
        if (!is_multicut(x->rule) || x->params.pos.size() == 1) return nullptr;
        Proof u = unfold_impl(x, true);
        if (multi_side) m.set_multi(u);
        else m.set_single(u);
        name = "unfold";
        return fit(build(m));
    }

    Proof exchanges(const MC& m) {
        MC k = m;
        bool any = false;
        while (is_structural_exchange(k.single()->rule)) {
            Flow f = flow(*k.single());
            k.at = f.of(k.single_side_right(), k.at)[0].idx;
            k.set_single(k.single()->prem[0]);
            any = true;
        }
        while (is_structural_exchange(k.multi()->rule)) {
            Flow f = flow(*k.multi());
            k.pos = map_to_premise(f, k.multi_side_right(), k.pos, 0);
            k.set_multi(k.multi()->prem[0]);
            any = true;
        }
        if (!any) return nullptr;
        name = "exchange";
        return fit(build(k));
    }

    // Replaces the occurrence at (right, idx) by its operand, removing the dereliction (?D or !D) that
    // introduces it; rejected when the occurrence is weakened, contracted or comes from an axiom.
    Proof strip_dereliction(const Proof& x, bool right, int idx, Rule intro) const {
        Flow f = flow(*x);
        if (is_principal(f, right, idx)) {
            if (x->rule != intro) throw Reject{};
            return x->prem[0];
        }
        Params q = x->params;
        if (x->prem.empty()) {
            if (x->rule != R::OneR && x->rule != R::ZeroL) throw Reject{};
            auto& ctx = right ? q.rctx : q.lctx;
            int k = right && x->rule == R::OneR ? idx - 1 : idx;
            ctx[k] = ctx[k].lhs();
            return node(x->rule, q, {});
        }
        const auto& cons = f.of(right, idx);
        if (cons.empty()) throw Reject{};
        std::vector<Proof> prems = x->prem;
        for (const auto& o : cons) prems[o.prem] = strip_dereliction(prems[o.prem], o.right, o.idx, intro);
        return node(x->rule, q, prems);
    }

    // Cut_?! against an axiom: the ?B side is promoted (B side axiom !B |- !B) or the !B side is
    // turned into ?L (?B side axiom ?B |- ?B).
    Proof wb_identity(const MC& m) {
        if (m.n() != 1) return nullptr;
        const Proof& X = m.P;  // ?B on the right
        const Proof& Y = m.Q;  // !B on the left
        int xi = m.left ? m.at : m.pos[0];
        int yi = m.left ? m.pos[0] : m.at;
        if (Y->rule == R::Id) {
            Proof s = strip_dereliction(X, true, xi, R::WhyD);
            name = "right-id-cut?!";
            return fit(node(R::BangR, Params{}, {right_to_front(s, xi)}));
        }
        if (X->rule == R::Id) {
            Proof s = strip_dereliction(Y, false, yi, R::BangD);
            name = "left-id-cut?!";
            return fit(node(R::WhyL, Params{}, {left_to_end(s, yi)}));
        }
        return nullptr;
    }

    Proof identity(const MC& m) {
        if (m.wb) return wb_identity(m);
        if (m.single()->rule == R::Id) {
            name = m.left ? "left-id-cut" : "right-id-cut";
            return fit(m.multi());
        }
        if (m.multi()->rule == R::Id && m.n() == 1) {
            name = m.left ? "right-id-cut" : "left-id-cut";
            return fit(m.single());
        }
        return nullptr;
    }

    Proof attempt(const MC& m) {
        Flow fs = flow(*m.single());
        Flow fm = flow(*m.multi());
        bool sp = is_principal(fs, m.single_side_right(), m.at);
        int j = -1;
        for (int s : m.pos)
            if (is_principal(fm, m.multi_side_right(), s)) {
                j = s;
                break;
            }
        if (sp && j >= 0)
            if (Proof r = guard([&] { return principal(m, j); })) return r;
        if (j >= 0)
            if (Proof r = guard([&] { return structural(m, j); })) return r;
        if (j < 0)
            if (Proof r = guard([&] { return push_multi(m, fm); })) return r;
        if (!sp)
            if (Proof r = guard([&] { return push_single(m, fs); })) return r;
        return nullptr;
    }

    std::string pair_name(const MC& m) const {
        return std::string("(") + rule_label(m.P->rule) + "," + rule_label(m.Q->rule) + ")-cut";
    }

    Proof principal(const MC& m, int j) {
        const Proof& P = m.P;
        const Proof& Q = m.Q;
        Rule rp = P->rule, rq = Q->rule;
        std::vector<int> rest = without(m.pos, j);
        name = pair_name(m);
        if (m.left) {
            Flow fq = flow(*Q);
            auto unary_x = [&](MC* mx) {
                MC x = m;
                x.Q = Q->prem[0];
                x.pos = map_to_premise(fq, false, rest, 0);
                *mx = x;
                return build(x);
            };
            int lq = Q->prem.size() == 1 ? static_cast<int>(Q->prem[0]->seq().left.size()) - 1 : -1;
            if (!m.wb && (rp == R::BangR || rp == R::BangRBang) && rq == R::BangD) {
                MC mx;
                Proof X = unary_x(&mx);
                return fit(cut1(P->prem[0], 0, X, multi_index(mx, false, lq)));
            }
            if (!m.wb && rp == R::BangR && rq == R::BangWhyL) {
                MC mx;
                Proof X = unary_x(&mx);
                int i = multi_index(mx, false, lq);
                if (is_pure(P, c_, OccRef{{}, true, m.at}, rd_)) {
                    name += " pure";
                    return fit(cut1(P->prem[0], 0, X, i, true));
                }
                if (!rest.empty()) throw Reject{};
                name += " impure";
                MC r;
                r.left = false;
                r.wb = true;
                r.P = P->prem[0];
                r.Q = Q->prem[0];
                r.at = lq;
                r.pos = {0};
                return fit(build(r));
            }
            if (!m.wb && rp == R::TensorR && rq == R::TensorL) {
                MC mx, my;
                Proof X = unary_x(&mx);
                int i1 = multi_index(mx, false, lq - 1), i2 = multi_index(mx, false, lq);
                Proof Y = cut1(P->prem[1], 0, X, i2, false, &my);
                return fit(cut1(P->prem[0], 0, Y, multi_index(my, false, i1)));
            }
            if (!m.wb && (((rp == R::WithR || rp == R::WithRWhy) && rq == R::WithL) ||
                          (rp == R::AndR && (rq == R::AndL || rq == R::AndLBang)))) {
                MC mx;
                Proof X = unary_x(&mx);
                return fit(cut1(P->prem[Q->params.i - 1], 0, X, multi_index(mx, false, lq)));
            }
            if (!m.wb && rp == R::NegR && rq == R::NegL) {
                MC mx;
                Proof X = unary_x(&mx);
                const Proof& p1 = P->prem[0];
                return fit(cut1(X, multi_index(mx, true, 0), p1, static_cast<int>(p1->seq().left.size()) - 1));
            }
            if (!m.wb && ((rp == R::IImpRWhy && rq == R::IImpLWhy) || (rp == R::BangRBang && rq == R::ClImpLBang))) {
                Proof p1;
                if (rp == R::IImpRWhy) {
                    p1 = P->prem[0];
                } else {
                    Proof p0 = P->prem[0];
                    while (is_structural_exchange(p0->rule)) p0 = p0->prem[0];
                    if (p0->rule != R::ClImpRBang || p0->seq().right[0] != P->seq().right[0].lhs()) throw Reject{};
                    p1 = p0->prem[0];
                }
                Flow fq = flow(*Q);
                MC xb = m, xa = m;
                xb.Q = Q->prem[0];
                xb.pos = map_to_premise(fq, false, rest, 0);
                xa.Q = Q->prem[1];
                xa.pos = map_to_premise(fq, false, rest, 1);
                Proof XB = build(xb), XA = build(xa);
                int ib = multi_index(xb, false, static_cast<int>(Q->prem[0]->seq().left.size()) - 1);
                MC my;
                Proof Y = cut1(p1, 0, XB, ib, false, &my);
                int iaY = single_index(my, false, static_cast<int>(p1->seq().left.size()) - 1, 0);
                return fit(cut1(XA, multi_index(xa, true, 0), Y, iaY));
            }
            if (m.wb && rp == R::WhyD && rq == R::BangD) {
                MC mx;
                Proof X = unary_x(&mx);
                return fit(cut1(P->prem[0], 0, X, multi_index(mx, false, lq)));
            }
            return nullptr;
        }
        Flow fp = flow(*P);
        auto unary_x = [&](MC* mx) {
            MC x = m;
            x.P = P->prem[0];
            x.pos = map_to_premise(fp, true, rest, 0);
            *mx = x;
            return build(x);
        };
        auto last = [](const Proof& x) { return static_cast<int>(x->seq().left.size()) - 1; };
        if (!m.wb && rp == R::WhyD && (rq == R::WhyL || rq == R::WhyLWhy)) {
            MC mx;
            Proof X = unary_x(&mx);
            return fit(cut1(X, multi_index(mx, true, 0), Q->prem[0], last(Q->prem[0])));
        }
        if (!m.wb && rp == R::ParR && rq == R::ParL) {
            MC mx, my;
            Proof X = unary_x(&mx);
            int i1 = multi_index(mx, true, 0), i2 = multi_index(mx, true, 1);
            Proof Y = cut1(X, i1, Q->prem[0], last(Q->prem[0]), false, &my);
            return fit(cut1(Y, single_index(my, true, i2, 0), Q->prem[1], last(Q->prem[1])));
        }
        if (!m.wb && ((rp == R::PlusR && (rq == R::PlusL || rq == R::PlusLBang)) ||
                      ((rp == R::OrR || rp == R::OrRWhy) && rq == R::OrL))) {
            MC mx;
            Proof X = unary_x(&mx);
            const Proof& qi = Q->prem[P->params.i - 1];
            return fit(cut1(X, multi_index(mx, true, 0), qi, last(qi)));
        }
        if (m.wb && rp == R::WhyD && rq == R::BangD) {
            MC mx;
            Proof X = unary_x(&mx);
            return fit(cut1(X, multi_index(mx, true, 0), Q->prem[0], last(Q->prem[0])));
        }
        return nullptr;
    }

    std::pair<std::vector<Formula>, std::vector<Formula>> single_context(const MC& m) const {
        const Sequent& s = m.single()->seq();
        std::vector<Formula> l = s.left, r = s.right;
        if (m.left) r.erase(r.begin() + m.at);
        else l.erase(l.begin() + m.at);
        return {l, r};
    }

    Proof weaken_ctx(Proof x, const std::vector<Formula>& l, const std::vector<Formula>& r) const {
        Rule wl = rule_allowed(R::WL, c_) ? R::WL : R::BangW;
        Rule wr = rule_allowed(R::WR, c_) ? R::WR : R::WhyW;
        for (const auto& f : l) {
            Params q;
            q.intro = f;
            x = node(wl, q, {x});
        }
        for (const auto& f : r) {
            Params q;
            q.intro = f;
            x = node(wr, q, {x});
        }
        return x;
    }

    Proof contract_ctx(Proof x, const std::vector<Formula>& l, const std::vector<Formula>& r) const {
        Rule cl = rule_allowed(R::CL, c_) ? R::CL : R::BangC;
        Rule cr = rule_allowed(R::CR, c_) ? R::CR : R::WhyC;
        for (const auto& f : l) {
            Sequent t = x->seq();
            for (int k = 0; k < 2; ++k) {
                auto it = std::find(t.left.begin(), t.left.end(), f);
                if (it == t.left.end()) throw Reject{};
                t.left.erase(it);
            }
            t.left.push_back(f);
            t.left.push_back(f);
            x = node(cl, Params{}, {permute_to(x, t)});
        }
        for (const auto& f : r) {
            Sequent t = x->seq();
            for (int k = 0; k < 2; ++k) {
                auto it = std::find(t.right.begin(), t.right.end(), f);
                if (it == t.right.end()) throw Reject{};
                t.right.erase(it);
            }
            t.right.insert(t.right.begin(), f);
            t.right.insert(t.right.begin(), f);
            x = node(cr, Params{}, {permute_to(x, t)});
        }
        return x;
    }

    // Weakening or contraction on the multi side's cut occurrence j.
    Proof structural(const MC& m, int j) {
        const Proof& M = m.multi();
        Rule r = M->rule;
        bool weak = m.left ? (r == R::WL || r == R::BangW || r == R::TTL || r == R::TTLBang || r == R::TopL)
                           : (r == R::WR || r == R::WhyW || r == R::FFR || r == R::FFRWhy || r == R::BotR);
        bool contr = m.left ? (r == R::CL || r == R::BangC) : (r == R::CR || r == R::WhyC);
        if (!weak && !contr) return nullptr;
        Flow f = flow(*M);
        bool side = m.multi_side_right();
        std::vector<int> rest = without(m.pos, j);
        std::vector<int> pos = map_to_premise(f, side, rest, 0);
        if (contr) {
            for (const auto& o : f.of(side, j)) pos.push_back(o.idx);
            std::sort(pos.begin(), pos.end());
        }
        MC x = m;
        x.set_multi(M->prem[0]);
        x.pos = pos;
        Proof X = build(x);
        auto [l, rr] = single_context(m);
        name = pair_name(m);
        return fit(weak ? weaken_ctx(X, l, rr) : contract_ctx(X, l, rr));
    }

    Proof push_multi(const MC& m, const Flow& f) {
        const Proof& M = m.multi();
        if (M->prem.empty()) {
            name = std::string(m.left ? "right-minor " : "left-minor ") + rule_label(M->rule) + "-cut";
            return rebuild_leaf(M);
        }
        if (Proof u = unfold_side(m, true)) return u;
        bool side = m.multi_side_right();
        std::vector<Proof> prems;
        for (int k = 0; k < static_cast<int>(M->prem.size()); ++k) {
            MC x = m;
            x.set_multi(M->prem[k]);
            x.pos = map_to_premise(f, side, m.pos, k);
            Proof b = build(x);
            auto [aL, aR] = actives_of(f, k);
            for (int& i : aL) i = multi_index(x, false, i);
            for (int& i : aR) i = multi_index(x, true, i);
            prems.push_back(arrange(b, aL, aR));
        }
        name = std::string(m.left ? "right-minor " : "left-minor ") + rule_label(M->rule) + "-cut";
        return fit(reapply(M, prems));
    }

    Proof push_single(const MC& m, const Flow& f) {
        const Proof& S = m.single();
        if (S->prem.empty()) {
            name = std::string(m.left ? "left-minor " : "right-minor ") + rule_label(S->rule) + "-cut";
            return rebuild_leaf(S);
        }
        if (Proof u = unfold_side(m, false)) return u;
        const auto& cons = f.of(m.single_side_right(), m.at);
        if (cons.size() != 1) return nullptr;
        int k = cons[0].prem;
        MC x = m;
        x.set_single(S->prem[k]);
        x.at = cons[0].idx;
        Proof cur = build(x);
        std::vector<Proof> others(S->prem.size());
        for (int o = 0; o < static_cast<int>(S->prem.size()); ++o) {
            if (o == k) continue;
            auto [aL, aR] = actives_of(f, o);
            others[o] = arrange(S->prem[o], aL, aR);
        }
        auto [aL, aR] = actives_of(f, k);
        const Sequent& ps = S->prem[k]->seq();
        for (int c = 0; c < m.n(); ++c) {
            const Sequent& s = cur->seq();
            std::vector<bool> usedL(s.left.size()), usedR(s.right.size());
            auto pick = [&](const std::vector<Formula>& side, std::vector<bool>& used, Formula g) {
                for (int i = static_cast<int>(side.size()) - 1; i >= 0; --i)
                    if (!used[i] && side[i] == g) {
                        used[i] = true;
                        return i;
                    }
                throw Reject{};
            };
            std::vector<int> iL, iR;
            for (int i : aL) iL.push_back(pick(s.left, usedL, ps.left[i]));
            for (int i : aR) iR.push_back(pick(s.right, usedR, ps.right[i]));
            std::vector<Proof> prems = others;
            prems[k] = arrange(cur, iL, iR);
            cur = reapply(S, prems);
        }
        name = std::string(m.left ? "left-minor " : "right-minor ") + rule_label(S->rule) + "-cut";
        return fit(cur);
    }

    Proof split(const MC& m) {
        Flow fm = flow(*m.multi());
        int j = m.pos.back();
        for (int s : m.pos)
            if (is_principal(fm, m.multi_side_right(), s)) j = s;
        MC inner = m;
        inner.pos = without(m.pos, j);
        Proof X = build(inner);
        MC outer = m;
        outer.set_multi(X);
        outer.pos = {multi_index(inner, m.multi_side_right(), j)};
        name = "split";
        return fit(build(outer));
    }
};

void collect_sites(const Proof& p, std::vector<int>& path, std::vector<CutSite>& out) {
    if (is_cut_family(p->rule)) {
        CutSite s;
        s.path = path;
        s.cut_formula = cut_formula(*p);
        s.rank = rank(s.cut_formula);
        s.site_depth = static_cast<int>(path.size());
        s.multiplicity = is_multicut(p->rule) ? static_cast<int>(p->params.pos.size()) : 1;
        out.push_back(std::move(s));
    }
    for (int k = 0; k < static_cast<int>(p->prem.size()); ++k) {
        path.push_back(k);
        collect_sites(p->prem[k], path, out);
        path.pop_back();
    }
}

}  // namespace

Formula cut_formula(const ProofNode& n) {
    switch (n.rule) {
        case R::Cut: case R::CutWhy: case R::CutWB: return n.prem[0]->seq().right[0];
        case R::CutBang: return n.prem[1]->seq().left.back();
        case R::CutLn: case R::CutLnWB: return n.prem[0]->seq().right[n.params.at];
        case R::CutRn: return n.prem[1]->seq().left[n.params.at];
        case R::CutRnWB: return n.prem[0]->seq().right[n.params.pos.at(0)];
        default: throw CutElimError("invalid-site", std::string("not a cut: ") + rule_name(n.rule));
    }
}

std::optional<CutSite> select_cut(const Proof& p) {
    std::vector<CutSite> all;
    std::vector<int> path;
    collect_sites(p, path, all);
    if (all.empty()) return std::nullopt;
    auto better = [](const CutSite& a, const CutSite& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        if (a.site_depth != b.site_depth) return a.site_depth > b.site_depth;
        return a.path < b.path;
    };
    return *std::min_element(all.begin(), all.end(), [&](const CutSite& a, const CutSite& b) { return better(a, b); });
}

CutSite site_at(const Proof& p, const std::vector<int>& path) {
    Proof n = node_at(p, path);
    if (!n || !is_cut_family(n->rule)) throw CutElimError("invalid-site", "no cut at " + path_string(path), path);
    CutSite s;
    s.path = path;
    s.cut_formula = cut_formula(*n);
    s.rank = rank(s.cut_formula);
    s.site_depth = static_cast<int>(path.size());
    s.multiplicity = is_multicut(n->rule) ? static_cast<int>(n->params.pos.size()) : 1;
    return s;
}

Proof merge_multicut(const Proof& p, const CutSite& s) {
    Proof n = node_at(p, s.path);
    if (!n || !is_cut_family(n->rule) || is_multicut(n->rule))
        throw CutElimError("invalid-site", "no binary cut at " + path_string(s.path), s.path);
    const Proof& P = n->prem[0];
    const Proof& Q = n->prem[1];
    Params q;
    Proof out;
    auto last = [](const Proof& x) { return static_cast<int>(x->seq().left.size()) - 1; };
    switch (n->rule) {
        case R::Cut: {
            Formula a = P->seq().right[0];
            std::vector<Proof> chain{Q};
            while (chain.back()->rule == R::Cut && structurally_equal(chain.back()->prem[0], P))
                chain.push_back(chain.back()->prem[1]);
            int k = static_cast<int>(chain.size());
            for (; k > 1; --k) {
                const auto& l = chain[k - 1]->seq().left;
                if (static_cast<int>(l.size()) >= k && std::all_of(l.end() - k, l.end(), [&](const Formula& f) { return f == a; }))
                    break;
            }
            const Proof& Z = chain[k - 1];
            q.at = 0;
            for (int i = last(Z) - k + 1; i <= last(Z); ++i) q.pos.push_back(i);
            out = checked(mk(R::CutLn, q, {P, Z}));
            break;
        }
        case R::CutWB:
            q.at = 0;
            q.pos = {last(Q)};
            out = checked(mk(R::CutLnWB, q, {P, Q}));
            break;
        case R::CutWhy: {
            Proof lq = checked(mk(R::WhyLWhy, Params{}, {Q}));
            q.at = last(lq);
            q.pos = {0};
            out = checked(mk(R::CutRn, q, {P, lq}));
            break;
        }
        case R::CutBang: {
            Proof rp = checked(mk(R::BangRBang, Params{}, {P}));
            q.at = 0;
            q.pos = {last(Q)};
            out = checked(mk(R::CutLn, q, {rp, Q}));
            break;
        }
        default: throw CutElimError("invalid-site", "unexpected cut rule", s.path);
    }
    return replace_at(p, s.path, out);
}

Proof unfold_multicut(const Proof& node) {
    if (!is_multicut(node->rule)) throw CutElimError("invalid-site", "not a multicut node");
    return unfold_impl(node, false);
}

std::string format_step(const StepInfo& s) {
    std::ostringstream os;
    os << s.case_name << " at " << path_string(s.path) << " rank " << s.rank << " depth " << s.depth;
    return os.str();
}

Proof cut_step(const Proof& p, const CutSite& s, Calc c, StepInfo* info, PurityReading reading) {
    Proof n = node_at(p, s.path);
    if (!n || !is_cut_family(n->rule)) throw CutElimError("invalid-site", "no cut at " + path_string(s.path), s.path);
    Proof out;
    std::string name;
    if (!is_multicut(n->rule)) {
        out = merge_multicut(p, s);
        name = "merge";
    } else {
        Engine e(c, reading);
        Proof r = e.step(n);
        if (!r)
            throw CutElimError("no-matching-case",
                               "no reduction applies to " + describe_node(*n) + " at " + path_string(s.path), s.path);
        if (r->seq() != n->seq()) throw CutElimError("no-matching-case", "reduct changed the conclusion", s.path);
        out = replace_at(p, s.path, r);
        name = e.name;
    }
    if (info) *info = StepInfo{name, s.path, s.rank, s.site_depth};
    return out;
}

bool cutelim_supported(Calc c) {
    switch (c) {
        case Calc::ILC: case Calc::ILCd: case Calc::ILCr: case Calc::INC: case Calc::INCr: case Calc::CLC: case Calc::CLCr:
            return true;
        default: return false;
    }
}

Proof eliminate_cuts(const Proof& p, Calc c, const CutElimOptions& opt) {
    if (!cutelim_supported(c))
        throw CutElimError("calculus-unsupported", std::string("no cut elimination for ") + calc_name(c));
    CheckReport rep = check_proof(p, c);
    if (!rep.ok) throw CutElimError("precondition", rep.text(), rep.path);
    if (is_rho(c)) {
        TractabilityReport t = is_tractable(p, c, opt.reading);
        if (!t.ok) throw CutElimError("precondition", t.text(), t.path);
    }
    Proof cur = p;
    long steps = 0;
    while (auto s = select_cut(cur)) {
        if (steps >= opt.fuel)
            throw CutElimError("step-limit-exceeded", "gave up after " + std::to_string(steps) + " steps", s->path);
        StepInfo info;
        cur = cut_step(cur, *s, c, &info, opt.reading);
        ++steps;
        if (opt.on_step) opt.on_step(info, cur);
    }
    return cur;
}

}  // namespace seqcalc
