#include <algorithm>
#include <functional>
#include <numeric>

#include "seqcalc/build.hpp"
#include "seqcalc/translations.hpp"

namespace seqcalc {

namespace {

using R = Rule;

bool is_exchange(Rule r) { return r == R::XL || r == R::XR; }

// Unary !/?-introductions that may be reordered among themselves.
bool is_swap_rule(Rule r) {
    switch (r) {
        case R::BangD: case R::WhyD: case R::BangW: case R::WhyW: case R::BangR: case R::WhyL:
        case R::BangWhyL: case R::WhyBangR:
            return true;
        default: return false;
    }
}

Proof strip(Proof p) {
    while (is_exchange(p->rule)) p = p->prem[0];
    return p;
}

// Proof with occurrence identities carried along exchanges.
struct Tracked {
    Proof p;
    std::vector<int> L, R;
};

void t_swap(Tracked& t, bool right, int k) {
    if (right) {
        t.p = xr(t.p, k);
        std::swap(t.R[k], t.R[k + 1]);
    } else {
        t.p = xl(t.p, k);
        std::swap(t.L[k], t.L[k + 1]);
    }
}

// Reorders one side so that ids appear in the order given by want.
void t_arrange(Tracked& t, bool right, const std::vector<int>& want) {
    std::vector<int>& ids = right ? t.R : t.L;
    std::vector<int> rankv(ids.size());
    for (size_t k = 0; k < ids.size(); ++k)
        rankv[k] = static_cast<int>(std::find(want.begin(), want.end(), ids[k]) - want.begin());
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (size_t k = 0; k + 1 < rankv.size(); ++k) {
            if (rankv[k] > rankv[k + 1]) {
                std::swap(rankv[k], rankv[k + 1]);
                t_swap(t, right, static_cast<int>(k));
                swapped = true;
            }
        }
    }
}

std::vector<int> stable_order(const std::vector<Formula>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return compare(v[a], v[b]) < 0; });
    return idx;
}

void t_sort(Tracked& t) {
    for (int side = 0; side < 2; ++side) {
        bool right = side == 1;
        const auto& fs = right ? t.p->seq().right : t.p->seq().left;
        const auto& ids = right ? t.R : t.L;
        std::vector<int> want;
        for (int k : stable_order(fs)) want.push_back(ids[k]);
        t_arrange(t, right, want);
    }
}

Proof sorted(const Proof& p) {
    Tracked t{p, {}, {}};
    t.L.resize(p->seq().left.size());
    t.R.resize(p->seq().right.size());
    std::iota(t.L.begin(), t.L.end(), 0);
    std::iota(t.R.begin(), t.R.end(), 1000000);
    t_sort(t);
    return t.p;
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

struct ChainStep {
    Rule rule;
    bool right;
    int consumed;  // -1 for weakening
    int produced;
    Formula out;
};

class Normalizer {
public:
    explicit Normalizer(Calc c) : c_(c) {}

    Proof canon(const Proof& p) {
        if (is_exchange(p->rule)) return canon(p->prem[0]);
        if (is_swap_rule(p->rule)) return canon_chain(p);
        if (p->prem.empty()) return sorted(p);
        if (is_internal(p->rule)) return opaque(p);
        std::vector<Proof> cq;
        for (const auto& q : p->prem) cq.push_back(canon(q));
        if (p->rule == R::Cut) {
            if (is_eta_identity(cq[1])) return cq[0];
            if (is_eta_identity(cq[0])) return cq[1];
        }
        Flow fl = flow(*p);
        std::vector<Proof> arranged;
        for (size_t k = 0; k < p->prem.size(); ++k) {
            const Sequent& orig = p->prem[k]->seq();
            Tracked t = track_sorted(cq[k], orig);
            std::vector<int> actL, actR;
            for (const Occ& o : fl.active) {
                if (o.prem != static_cast<int>(k)) continue;
                (o.right ? actR : actL).push_back(o.idx);
            }
            std::sort(actL.begin(), actL.end());
            std::sort(actR.begin(), actR.end());
            t_arrange(t, false, place(t.L, actL, false));
            t_arrange(t, true, place(t.R, actR, true));
            arranged.push_back(t.p);
        }
        Params q = p->params;
        q.split = -1;
        return sorted(checked(mk(p->rule, q, arranged)));
    }

    // Cut(!R q, !?L r) becomes Cut(?!R q, ?L r): both encode the same Cut^? on ?B / !B.
    Proof dual_cut_pass(const Proof& p) {
        std::vector<Proof> prem;
        bool changed = false;
        for (const auto& q : p->prem) {
            prem.push_back(dual_cut_pass(q));
            changed = changed || prem.back() != q;
        }
        Proof cur = changed ? checked(mk(p->rule, p->params, prem)) : p;
        if (cur->rule != R::Cut) return cur;
        Proof l = strip(cur->prem[0]), r = strip(cur->prem[1]);
        if (l->rule != R::BangR || r->rule != R::BangWhyL) return cur;
        Formula cf = cur->prem[1]->seq().left.back();
        const auto& lr = l->seq().right;
        const auto& rl = r->seq().left;
        if (lr[0] != cf || rl.back() != cf) return cur;
        if (std::count(lr.begin(), lr.end(), cf) != 1 || std::count(rl.begin(), rl.end(), cf) != 1) return cur;
        Proof l2 = replay(cur->prem[0], un(R::WhyBangR, l->prem[0]));
        Proof r2 = replay(cur->prem[1], un(R::WhyL, r->prem[0]));
        if (!l2 || !r2) return cur;
        Proof out = mk(R::Cut, Params{}, {l2, r2});
        return out->ok() ? out : cur;
    }

private:
    Calc c_;

    // Premise ids are the original positions; the canonical premise has them in sorted order.
    Tracked track_sorted(const Proof& cq, const Sequent& orig) {
        Tracked t{cq, {}, {}};
        for (int k : stable_order(orig.left)) t.L.push_back(k);
        for (int k : stable_order(orig.right)) t.R.push_back(k);
        return t;
    }

    // Context ids keep their sorted order; actives go to the end of the left side or the front of the right.
    static std::vector<int> place(const std::vector<int>& ids, const std::vector<int>& act, bool right) {
        std::vector<int> ctx;
        for (int id : ids)
            if (std::find(act.begin(), act.end(), id) == act.end()) ctx.push_back(id);
        std::vector<int> out;
        if (right) {
            out = act;
            out.insert(out.end(), ctx.begin(), ctx.end());
        } else {
            out = ctx;
            out.insert(out.end(), act.begin(), act.end());
        }
        return out;
    }

    Proof opaque(const Proof& p) {
        std::vector<Proof> prem;
        for (const auto& q : p->prem) prem.push_back(permute_to(canon(q), q->seq()));
        return sorted(checked(mk(p->rule, p->params, prem)));
    }

    // Re-applies the exchange nodes between top (exclusive) and the stripped node onto a new base.
    static Proof replay(const Proof& top, const Proof& base) {
        std::vector<const ProofNode*> xs;
        Proof cur = top;
        while (is_exchange(cur->rule)) {
            xs.push_back(cur.get());
            cur = cur->prem[0];
        }
        Proof out = base;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            out = mk((*it)->rule, (*it)->params, {out});
            if (!out->ok()) return nullptr;
        }
        return out;
    }

    bool valid(const Proof& n) {
        if (!n->ok()) return false;
        return !check_node(*n, c_, CheckOptions{}, nullptr).has_value();
    }

    bool apply(Tracked& t, const ChainStep& s) {
        if (s.consumed >= 0) {
            auto& ids = s.right ? t.R : t.L;
            auto it = std::find(ids.begin(), ids.end(), s.consumed);
            if (it == ids.end()) return false;
            int at = static_cast<int>(it - ids.begin());
            std::vector<int> want = ids;
            want.erase(want.begin() + at);
            if (s.right) want.insert(want.begin(), s.consumed);
            else want.push_back(s.consumed);
            t_arrange(t, s.right, want);
        }
        Params q;
        if (s.consumed < 0) q.intro = s.out;
        Proof n = mk(s.rule, q, {t.p});
        if (!valid(n)) return false;
        t.p = n;
        if (s.right) {
            if (s.consumed >= 0) t.R[0] = s.produced;
            else t.R.insert(t.R.begin(), s.produced);
        } else {
            if (s.consumed >= 0) t.L.back() = s.produced;
            else t.L.push_back(s.produced);
        }
        t_sort(t);
        return true;
    }

    bool dfs(Tracked& t, const std::vector<ChainStep>& steps, std::vector<bool>& done, size_t left, long& budget) {
        if (left == 0) return true;
        if (--budget < 0) return false;
        std::vector<size_t> cand;
        for (size_t k = 0; k < steps.size(); ++k) {
            if (done[k]) continue;
            const auto& s = steps[k];
            if (s.consumed >= 0) {
                const auto& ids = s.right ? t.R : t.L;
                if (std::find(ids.begin(), ids.end(), s.consumed) == ids.end()) continue;
            }
            cand.push_back(k);
        }
        std::stable_sort(cand.begin(), cand.end(), [&](size_t a, size_t b) {
            int c = std::string_view(rule_name(steps[a].rule)).compare(rule_name(steps[b].rule));
            if (c != 0) return c < 0;
            return compare(steps[a].out, steps[b].out) < 0;
        });
        for (size_t k : cand) {
            Tracked t2 = t;
            if (!apply(t2, steps[k])) continue;
            done[k] = true;
            if (dfs(t2, steps, done, left - 1, budget)) {
                t = t2;
                return true;
            }
            done[k] = false;
        }
        return false;
    }

    Proof canon_chain(const Proof& p) {
        std::vector<Proof> nodes;
        Proof cur = p;
        while (is_exchange(cur->rule) || is_swap_rule(cur->rule)) {
            nodes.push_back(cur);
            cur = cur->prem[0];
        }
        Proof base = canon(cur);
        if (!nodes.empty() && cur->rule == R::Cut && is_swap_rule(strip(base)->rule)) {
            // A removed identity cut exposed more chain below; collect the whole chain again.
            Proof r = permute_to(base, cur->seq());
            for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) r = checked(mk((*it)->rule, (*it)->params, {r}));
            return canon_chain(r);
        }
        const Sequent& ts = cur->seq();
        int next = 0;
        std::vector<int> L(ts.left.size()), Rv(ts.right.size());
        for (auto& x : L) x = next++;
        for (auto& x : Rv) x = next++;
        std::vector<int> baseL = L, baseR = Rv;
        std::vector<ChainStep> steps;
        for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
            const ProofNode& n = **it;
            Flow fl = flow(n);
            std::vector<int> nl, nr;
            for (int side = 0; side < 2; ++side) {
                bool right = side == 1;
                const auto& cons = right ? fl.right : fl.left;
                const auto& fs = right ? n.seq().right : n.seq().left;
                auto& out = right ? nr : nl;
                for (size_t j = 0; j < cons.size(); ++j) {
                    bool principal = std::find(fl.principal.begin(), fl.principal.end(),
                                               Occ{-1, right, static_cast<int>(j)}) != fl.principal.end();
                    auto idof = [&](const Occ& o) { return o.right ? Rv[o.idx] : L[o.idx]; };
                    if (!principal) {
                        out.push_back(idof(cons[j][0]));
                        continue;
                    }
                    int consumed = cons[j].empty() ? -1 : idof(cons[j][0]);
                    steps.push_back({n.rule, right, consumed, next, fs[j]});
                    out.push_back(next++);
                }
            }
            L = nl;
            Rv = nr;
        }
        rewrite_bang_why(steps, next);
        Tracked t{base, {}, {}};
        for (int k : stable_order(ts.left)) t.L.push_back(baseL[k]);
        for (int k : stable_order(ts.right)) t.R.push_back(baseR[k]);
        std::vector<bool> done(steps.size(), false);
        long budget = 20000;
        Tracked t0 = t;
        if (!dfs(t, steps, done, steps.size(), budget)) {
            t = t0;
            for (const auto& s : steps)
                if (!apply(t, s)) throw BuildError("permutation normal form: chain could not be replayed");
        }
        Proof out = t.p;
        if (is_eta_identity(out)) return id(out->seq().left[0]);
        return out;
    }

    // !?L applied to the result of !D is rewritten to !D applied to the result of ?L.
    bool rewrite_bang_why(std::vector<ChainStep>& steps, int& next) {
        if (!rule_allowed(R::WhyL, c_)) return false;
        bool any = false;
        for (auto& b : steps) {
            if (b.rule != R::BangWhyL) continue;
            for (auto& a : steps) {
                if (a.rule != R::BangD || a.produced != b.consumed) continue;
                int mid = next++;
                Formula inner = a.out.lhs();
                a = ChainStep{R::WhyL, false, a.consumed, mid, Formula::why(inner)};
                b = ChainStep{R::BangD, false, mid, b.produced, b.out};
                any = true;
                break;
            }
        }
        // Dually ?!R applied to the result of ?D becomes ?D applied to the result of !R.
        if (!rule_allowed(R::BangR, c_)) return any;
        for (auto& b : steps) {
            if (b.rule != R::WhyBangR) continue;
            for (auto& a : steps) {
                if (a.rule != R::WhyD || a.produced != b.consumed) continue;
                int mid = next++;
                Formula inner = a.out.lhs();
                a = ChainStep{R::BangR, true, a.consumed, mid, Formula::bang(inner)};
                b = ChainStep{R::WhyD, true, mid, b.produced, b.out};
                any = true;
                break;
            }
        }
        return any;
    }
};

bool first_difference(const Proof& a, const Proof& b, std::vector<int>& path) {
    if (a->rule != b->rule || !(a->params == b->params) || a->prem.size() != b->prem.size()) return true;
    for (size_t k = 0; k < a->prem.size(); ++k) {
        path.push_back(static_cast<int>(k));
        if (first_difference(a->prem[k], b->prem[k], path)) return true;
        path.pop_back();
    }
    return false;
}

}  // namespace

Proof permutation_normalize(const Proof& p, Calc c) {
    Normalizer n(c);
    Proof q = p;
    if (rule_allowed(R::WhyBangR, c) && !is_rho(c)) q = n.dual_cut_pass(q);
    Proof out = n.canon(q);
    return permute_to(out, p->seq());
}

CommuteResult commute_check(const Proof& p) {
    CommuteResult res;
    Proof a = translate_proof(p, Edge::LkIlcN);
    Proof b = translate_proof(p, Edge::LkIlcV);
    res.via_inc = permutation_normalize(a, Calc::ILCi);
    res.via_clc = permutation_normalize(b, Calc::ILCi);
    std::vector<int> path;
    if (!first_difference(res.via_inc, res.via_clc, path)) {
        res.ok = true;
        return res;
    }
    res.ok = false;
    res.path = path;
    Proof x = node_at(res.via_inc, path), y = node_at(res.via_clc, path);
    res.detail = "via INC:  " + describe_node(*x) + "\nvia CLC:  " + describe_node(*y);
    return res;
}

}  // namespace seqcalc
