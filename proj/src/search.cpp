#include "seqcalc/search.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "seqcalc/build.hpp"

namespace seqcalc {

namespace {

using R = Rule;
using Fs = std::vector<Formula>;

struct SeqHash {
    size_t operator()(const Sequent& s) const {
        size_t h = s.left.size() * 1000003u;
        for (const auto& f : s.left) h = h * 31 + f.id();
        h = h * 131 + 7;
        for (const auto& f : s.right) h = h * 31 + f.id();
        return h;
    }
};

Sequent sorted(Sequent s) {
    std::stable_sort(s.left.begin(), s.left.end(), FormulaLess{});
    std::stable_sort(s.right.begin(), s.right.end(), FormulaLess{});
    return s;
}

Fs remove_at(const Fs& v, size_t i) {
    Fs out = v;
    out.erase(out.begin() + static_cast<long>(i));
    return out;
}

Fs cat(Fs a, const Fs& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool all_bang(const Fs& v) {
    return std::all_of(v.begin(), v.end(), [](const Formula& f) { return f.is_bang(); });
}
bool all_why(const Fs& v) {
    return std::all_of(v.begin(), v.end(), [](const Formula& f) { return f.is_why(); });
}

// All ways to split a sorted multiset into two sub-multisets.
std::vector<std::pair<Fs, Fs>> splits(const Fs& v) {
    std::vector<std::pair<Formula, int>> groups;
    for (const auto& f : v) {
        if (!groups.empty() && groups.back().first == f) ++groups.back().second;
        else groups.push_back({f, 1});
    }
    std::vector<std::pair<Fs, Fs>> out;
    Fs a, b;
    std::function<void(size_t)> go = [&](size_t g) {
        if (g == groups.size()) {
            out.push_back({a, b});
            return;
        }
        auto [f, n] = groups[g];
        for (int k = 0; k <= n; ++k) {
            for (int t = 0; t < k; ++t) a.push_back(f);
            for (int t = k; t < n; ++t) b.push_back(f);
            go(g + 1);
            for (int t = 0; t < k; ++t) a.pop_back();
            for (int t = k; t < n; ++t) b.pop_back();
        }
    };
    go(0);
    return out;
}

struct App {
    Rule rule;
    Params params;
    std::vector<Sequent> prem;  // premise layouts expected by the rule
};

class LimitReached {};

// Permutes from below any exchange chain at the root so chains do not accumulate.
Proof repermute(Proof p, const Sequent& target) {
    while (is_structural_exchange(p->rule)) p = p->prem[0];
    return permute_to(p, target);
}

class Searcher {
public:
    Searcher(Calc c, const SearchOptions& o) : c_(c), opt_(o), rules_(calc_rules(c)) {}

    long nodes = 0;

    Proof prove(const Sequent& s, int d, bool& pruned) {
        if (auto it = found_.find(s); it != found_.end() && it->second.second <= d) return it->second.first;
        if (auto it = failed_.find(s); it != failed_.end() && it->second >= d) return nullptr;
        if (on_branch_.count(s)) {
            pruned = true;
            return nullptr;
        }
        if (++nodes > opt_.max_nodes) throw LimitReached{};
        for (const App& a : leaves(s))
            if (Proof p = assemble(a, {}, s)) return remember(s, p);
        if (d == 0) {
            note_failure(s, d);
            return nullptr;
        }
        on_branch_.insert(s);
        bool sub_pruned = false;
        Proof result;
        for (const App& a : apps(s)) {
            std::vector<Proof> subs;
            for (const auto& ps : a.prem) {
                Proof q = prove(sorted(ps), d - 1, sub_pruned);
                if (!q) break;
                subs.push_back(q);
            }
            if (subs.size() != a.prem.size()) continue;
            if ((result = assemble(a, subs, s))) break;
        }
        on_branch_.erase(s);
        if (result) return remember(s, result);
        if (sub_pruned) pruned = true;
        else note_failure(s, d);
        return nullptr;
    }

private:
    Calc c_;
    SearchOptions opt_;
    std::vector<Rule> rules_;
    std::unordered_map<Sequent, std::pair<Proof, int>, SeqHash> found_;
    std::unordered_map<Sequent, int, SeqHash> failed_;
    std::unordered_set<Sequent, SeqHash> on_branch_;

    Proof remember(const Sequent& s, const Proof& p) {
        found_[s] = {p, logical_depth(p)};
        return p;
    }

    void note_failure(const Sequent& s, int d) {
        auto& v = failed_.try_emplace(s, -1).first->second;
        v = std::max(v, d);
    }

    Proof assemble(const App& a, const std::vector<Proof>& subs, const Sequent& s) const {
        std::vector<Proof> prems;
        for (size_t k = 0; k < subs.size(); ++k) prems.push_back(repermute(subs[k], a.prem[k]));
        Proof n = mk(a.rule, a.params, prems);
        if (!n->ok() || check_node(*n, c_, CheckOptions{false, false})) return nullptr;
        if (!sequent_permutation(n->seq(), s)) return nullptr;
        return permute_to(n, s);
    }

    std::vector<App> leaves(const Sequent& s) const {
        std::vector<App> out;
        const Fs& L = s.left;
        const Fs& Rr = s.right;
        for (Rule r : rules_) {
            Params q;
            switch (r) {
                case R::Id:
                    if (L.size() == 1 && Rr.size() == 1 && L[0] == Rr[0]) {
                        q.intro = L[0];
                        out.push_back({r, q, {}});
                    }
                    break;
                case R::Dist:
                    if (L.size() == 1 && Rr.size() == 1 && L[0].is_bang() && L[0].lhs().is_why() &&
                        Rr[0] == Formula::why(Formula::bang(L[0].lhs().lhs()))) {
                        q.intro = L[0].lhs().lhs();
                        out.push_back({r, q, {}});
                    }
                    break;
                case R::TTR:
                    if (L.empty() && Rr.size() == 1 && Rr[0] == Formula::tt()) out.push_back({r, q, {}});
                    break;
                case R::TopR:
                    if (L.empty() && Rr.size() == 1 && Rr[0] == Formula::top()) out.push_back({r, q, {}});
                    break;
                case R::FFL:
                    if (Rr.empty() && L.size() == 1 && L[0] == Formula::ff()) out.push_back({r, q, {}});
                    break;
                case R::BotL:
                    if (Rr.empty() && L.size() == 1 && L[0] == Formula::bot()) out.push_back({r, q, {}});
                    break;
                case R::OneR:
                    if (auto it = std::find(Rr.begin(), Rr.end(), Formula::one()); it != Rr.end()) {
                        q.lctx = L;
                        q.rctx = remove_at(Rr, it - Rr.begin());
                        out.push_back({r, q, {}});
                    }
                    break;
                case R::ZeroL:
                    if (auto it = std::find(L.begin(), L.end(), Formula::zero()); it != L.end()) {
                        q.lctx = remove_at(L, it - L.begin());
                        q.rctx = Rr;
                        out.push_back({r, q, {}});
                    }
                    break;
                default: break;
            }
        }
        return out;
    }

    bool too_many(const Fs& side, const Formula& f) const {
        return std::count(side.begin(), side.end(), f) > opt_.contraction_budget;
    }

    std::vector<App> apps(const Sequent& s) const {
        std::vector<App> out;
        const Fs& L = s.left;
        const Fs& Rr = s.right;
        auto push = [&](Rule r, Params q, std::vector<Sequent> prem) {
            if (intuitionistic(c_))
                for (const auto& p : prem)
                    if (p.right.size() > 1) return;
            out.push_back({r, std::move(q), std::move(prem)});
        };
        for (Rule r : rules_) {
            for (size_t i = 0; i < L.size(); ++i) {
                if (i > 0 && L[i] == L[i - 1]) continue;
                left_apps(r, s, i, push);
            }
            for (size_t i = 0; i < Rr.size(); ++i) {
                if (i > 0 && Rr[i] == Rr[i - 1]) continue;
                right_apps(r, s, i, push);
            }
        }
        return out;
    }

    template <class Push>
    void left_apps(Rule r, const Sequent& s, size_t i, Push& push) const {
        const Fs& L = s.left;
        const Fs& Rr = s.right;
        Formula f = L[i];
        Fs ctx = remove_at(L, i);
        Params q;
        auto one = [&](Fs extra, Fs right) {
            push(r, q, {Sequent{cat(ctx, extra), std::move(right)}});
        };
        switch (r) {
            case R::WL: q.intro = f; one({}, Rr); break;
            case R::BangW:
                if (f.is_bang()) {
                    q.intro = f;
                    one({}, Rr);
                }
                break;
            case R::TTL: if (f == Formula::tt()) one({}, Rr); break;
            case R::TTLBang: if (f == Formula::tt() && all_bang(ctx)) one({}, Rr); break;
            case R::TopL: if (f == Formula::top()) one({}, Rr); break;
            case R::CL: case R::BangC:
                if ((r == R::CL || f.is_bang()) && !too_many(L, f)) one({f, f}, Rr);
                break;
            case R::BangD: if (f.is_bang()) one({f.lhs()}, Rr); break;
            case R::WhyL: if (f.is_why() && all_bang(ctx) && all_why(Rr)) one({f.lhs()}, Rr); break;
            case R::WhyLWhy: if (f.is_why() && all_why(Rr)) one({f.lhs()}, Rr); break;
            case R::BangWhyL:
                if (f.is_bang() && f.lhs().is_why() && all_bang(ctx) && all_why(Rr)) one({Formula::bang(f.lhs().lhs())}, Rr);
                break;
            case R::AndL: case R::AndLBang: case R::WithL: {
                Op op = r == R::WithL ? Op::With : Op::And;
                if (!f.is(op) || (r == R::AndLBang && !all_bang(ctx))) break;
                q.intro = f;
                q.i = 1;
                one({f.lhs()}, Rr);
                q.i = 2;
                one({f.rhs()}, Rr);
                break;
            }
            case R::OrL: case R::PlusL: case R::PlusLBang: {
                Op op = r == R::OrL ? Op::Or : Op::Plus;
                if (!f.is(op) || (r == R::PlusLBang && !all_bang(ctx))) break;
                push(r, q, {Sequent{cat(ctx, {f.lhs()}), Rr}, Sequent{cat(ctx, {f.rhs()}), Rr}});
                break;
            }
            case R::CImpL:
                if (f.is(Op::CImp)) push(r, q, {Sequent{ctx, cat({f.lhs()}, Rr)}, Sequent{cat(ctx, {f.rhs()}), Rr}});
                break;
            case R::IImpL:
                if (f.is(Op::IImp)) push(r, q, {Sequent{ctx, {f.lhs()}}, Sequent{cat(ctx, {f.rhs()}), Rr}});
                break;
            case R::TensorL: if (f.is(Op::Tensor)) one({f.lhs(), f.rhs()}, Rr); break;
            case R::NegL: if (f.is(Op::Neg)) one({}, cat({f.lhs()}, Rr)); break;
            case R::LDualL:
                try {
                    Formula a = linear_dual(f);
                    if (linear_dual(a) == f) one({}, cat({a}, Rr));
                } catch (const LanguageError&) {
                }
                break;
            case R::ParL: case R::UImpL: case R::ClImpLBang: case R::IImpLWhy: {
                Formula a, b;  // a goes to the first premise's antecedent end or succedent front per rule
                if (r == R::ParL && f.is(Op::Par)) {
                    a = f.lhs();
                    b = f.rhs();
                } else if (r == R::UImpL && f.is(Op::UImp)) {
                    a = f.lhs();
                    b = f.rhs();
                } else if (r == R::ClImpLBang && f.is_bang() && f.lhs().is(Op::ClImp)) {
                    a = f.lhs().lhs();
                    b = f.lhs().rhs();
                } else if (r == R::IImpLWhy && f.is(Op::IImp)) {
                    a = f.lhs();
                    b = f.rhs();
                } else {
                    break;
                }
                for (const auto& [l1, l2] : splits(ctx))
                    for (const auto& [r1, r2] : splits(Rr)) {
                        if (r == R::ParL) push(r, q, {Sequent{cat(l1, {a}), r1}, Sequent{cat(l2, {b}), r2}});
                        else if (r == R::UImpL) {
                            if (r1.empty()) push(r, q, {Sequent{l1, {a}}, Sequent{cat(l2, {b}), r2}});
                        } else if (r == R::ClImpLBang) {
                            if (all_bang(l1)) push(r, q, {Sequent{cat(l1, {b}), r1}, Sequent{l2, cat({a}, r2)}});
                        } else if (all_why(r2)) {
                            push(r, q, {Sequent{cat(l1, {b}), r1}, Sequent{l2, cat({a}, r2)}});
                        }
                    }
                break;
            }
            default: break;
        }
    }

    template <class Push>
    void right_apps(Rule r, const Sequent& s, size_t i, Push& push) const {
        const Fs& L = s.left;
        const Fs& Rr = s.right;
        Formula f = Rr[i];
        Fs ctx = remove_at(Rr, i);
        Params q;
        auto one = [&](Fs left, Fs extra) {
            push(r, q, {Sequent{std::move(left), cat(extra, ctx)}});
        };
        switch (r) {
            case R::WR: q.intro = f; one(L, {}); break;
            case R::WhyW:
                if (f.is_why()) {
                    q.intro = f;
                    one(L, {});
                }
                break;
            case R::FFR: if (f == Formula::ff()) one(L, {}); break;
            case R::FFRWhy: if (f == Formula::ff() && all_why(ctx)) one(L, {}); break;
            case R::BotR: if (f == Formula::bot()) one(L, {}); break;
            case R::CR: case R::WhyC:
                if ((r == R::CR || f.is_why()) && !too_many(Rr, f)) one(L, {f, f});
                break;
            case R::WhyD: if (f.is_why()) one(L, {f.lhs()}); break;
            case R::BangR: if (f.is_bang() && all_bang(L) && all_why(ctx)) one(L, {f.lhs()}); break;
            case R::BangRBang: if (f.is_bang() && all_bang(L)) one(L, {f.lhs()}); break;
            case R::WhyBangR:
                if (f.is_why() && f.lhs().is_bang() && all_bang(L) && all_why(ctx)) one(L, {Formula::why(f.lhs().lhs())});
                break;
            case R::OrR: case R::OrRWhy: case R::PlusR: {
                Op op = r == R::PlusR ? Op::Plus : Op::Or;
                if (!f.is(op) || (r == R::OrRWhy && !all_why(ctx))) break;
                q.intro = f;
                q.i = 1;
                one(L, {f.lhs()});
                q.i = 2;
                one(L, {f.rhs()});
                break;
            }
            case R::AndR: case R::WithR: case R::WithRWhy: {
                Op op = r == R::AndR ? Op::And : Op::With;
                if (!f.is(op) || (r == R::WithRWhy && !all_why(ctx))) break;
                push(r, q, {Sequent{L, cat({f.lhs()}, ctx)}, Sequent{L, cat({f.rhs()}, ctx)}});
                break;
            }
            case R::CImpR: case R::IImpR: case R::UImpR: case R::ClImpRBang: case R::IImpRWhy: {
                Op op = r == R::CImpR ? Op::CImp : r == R::UImpR ? Op::UImp : r == R::ClImpRBang ? Op::ClImp : Op::IImp;
                if (!f.is(op)) break;
                if (r == R::ClImpRBang && !all_bang(L)) break;
                if (r == R::IImpRWhy && !all_why(ctx)) break;
                one(cat(L, {f.lhs()}), {f.rhs()});
                break;
            }
            case R::ParR: if (f.is(Op::Par)) one(L, {f.lhs(), f.rhs()}); break;
            case R::NegR: if (f.is(Op::Neg)) push(r, q, {Sequent{cat(L, {f.lhs()}), ctx}}); break;
            case R::LDualR:
                try {
                    Formula a = linear_dual(f);
                    if (linear_dual(a) == f) push(r, q, {Sequent{cat(L, {a}), ctx}});
                } catch (const LanguageError&) {
                }
                break;
            case R::TensorR:
                if (!f.is(Op::Tensor)) break;
                for (const auto& [l1, l2] : splits(L))
                    for (const auto& [r1, r2] : splits(ctx))
                        push(r, q, {Sequent{l1, cat({f.lhs()}, r1)}, Sequent{l2, cat({f.rhs()}, r2)}});
                break;
            default: break;
        }
    }
};

}  // namespace

const char* verdict_name(SearchResult::Verdict v) {
    switch (v) {
        case SearchResult::Verdict::Found: return "found";
        case SearchResult::Verdict::Exhausted: return "exhausted";
        case SearchResult::Verdict::Limit: return "limit";
    }
    return "?";
}

int logical_depth(const Proof& p) {
    int d = -1;
    for (const auto& q : p->prem) d = std::max(d, logical_depth(q));
    if (is_structural_exchange(p->rule)) return std::max(d, 0);
    return d + 1;
}

SearchResult search_cutfree(const Sequent& goal, Calc c, int depth_bound, const SearchOptions& opt) {
    Logic lg = calc_logic(c);
    for (const auto* side : {&goal.left, &goal.right})
        for (const auto& f : *side)
            if (!in_language(f, lg))
                throw LanguageError("formula " + to_string(f) + " is not in the language of " + calc_name(c));
    SearchResult res;
    res.bound = depth_bound;
    Searcher s(c, opt);
    Sequent g = sorted(goal);
    try {
        for (int b = 0; b <= depth_bound; ++b) {
            bool pruned = false;
            if (Proof p = s.prove(g, b, pruned)) {
                res.verdict = SearchResult::Verdict::Found;
                res.proof = repermute(p, goal);
                break;
            }
        }
    } catch (const LimitReached&) {
        res.verdict = SearchResult::Verdict::Limit;
    }
    res.nodes_explored = s.nodes;
    return res;
}

}  // namespace seqcalc
