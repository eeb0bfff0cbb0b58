#include "seqcalc/generate.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "seqcalc/build.hpp"

namespace seqcalc {

namespace {

struct OpSets {
    std::vector<Op> consts, unary, binary;
};

OpSets ops_of(Logic logic) {
    OpSets s;
    for (Op o : {Op::Top, Op::Bot, Op::One, Op::Zero, Op::TT, Op::FF})
        if (op_in_language(o, logic)) s.consts.push_back(o);
    for (Op o : {Op::Bang, Op::Why, Op::Neg})
        if (op_in_language(o, logic)) s.unary.push_back(o);
    for (Op o : {Op::Tensor, Op::Par, Op::With, Op::Plus, Op::And, Op::Or, Op::IImp, Op::CImp, Op::UImp, Op::ClImp})
        if (op_in_language(o, logic)) s.binary.push_back(o);
    return s;
}

int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula random_sized(std::mt19937& rng, const OpSets& s, int size, const std::vector<std::string>& atoms) {
    if (size <= 1 || (s.unary.empty() && size == 2)) {
        if (!s.consts.empty() && coin(rng, 0.2)) return Formula::constant(s.consts[pick(rng, s.consts.size())]);
        return Formula::var(atoms[pick(rng, atoms.size())]);
    }
    bool use_unary = !s.unary.empty() && (size == 2 || coin(rng, 0.25));
    if (use_unary) return Formula::unary(s.unary[pick(rng, s.unary.size())], random_sized(rng, s, size - 1, atoms));
    int l = 1 + pick(rng, size - 2);
    return Formula::binary(s.binary[pick(rng, s.binary.size())], random_sized(rng, s, l, atoms),
                           random_sized(rng, s, size - 1 - l, atoms));
}

// Multiset union with maximal multiplicities, in first-seen order.
std::vector<Formula> multiset_union(const std::vector<Formula>& a, const std::vector<Formula>& b) {
    std::vector<Formula> out = a;
    std::vector<bool> used(out.size(), false);
    for (const auto& f : b) {
        bool found = false;
        for (size_t k = 0; k < out.size(); ++k) {
            if (!used[k] && out[k] == f) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            out.push_back(f);
            used.push_back(true);
        }
    }
    return out;
}

std::vector<Formula> missing(const std::vector<Formula>& have, const std::vector<Formula>& want) {
    std::vector<Formula> out;
    std::vector<bool> used(have.size(), false);
    for (const auto& f : want) {
        bool found = false;
        for (size_t k = 0; k < have.size(); ++k) {
            if (!used[k] && have[k] == f) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) out.push_back(f);
    }
    return out;
}

// Weakens p so its root becomes exactly the target sequent (target must contain the root as a sub-multiset).
Proof widen(Proof p, const Sequent& target) {
    for (const auto& f : missing(p->seq().left, target.left)) p = un(Rule::WL, p, f);
    for (const auto& f : missing(p->seq().right, target.right)) p = un(Rule::WR, p, f);
    return permute_to(p, target);
}

class LkGen {
public:
    LkGen(std::mt19937& rng, bool allow_cut) : rng_(rng), cut_(allow_cut), ops_(ops_of(Logic::CL)) {}

    Formula formula(int max_size) { return random_sized(rng_, ops_, 1 + pick(rng_, max_size), {"X", "Y"}); }

    Proof gen(int d) {
        if (d <= 0 || coin(rng_, 0.2)) return axiom();
        for (int tries = 0; tries < 8; ++tries) {
            Proof p = step(d);
            if (p) return p;
        }
        return axiom();
    }

private:
    Proof axiom() {
        int k = pick(rng_, 8);
        if (k == 0) return leaf(Rule::TTR);
        if (k == 1) return leaf(Rule::FFL);
        return id(formula(3));
    }

    Proof step(int d) {
        switch (pick(rng_, 14)) {
            case 0: return un(Rule::WL, gen(d - 1), formula(3));
            case 1: return un(Rule::WR, gen(d - 1), formula(3));
            case 2: return un(Rule::TTL, gen(d - 1));
            case 3: return un(Rule::FFR, gen(d - 1));
            case 4: {
                Proof p = gen(d - 1);
                int n = static_cast<int>(p->seq().left.size());
                return n >= 2 ? xl(p, pick(rng_, n - 1)) : nullptr;
            }
            case 5: {
                Proof p = gen(d - 1);
                int n = static_cast<int>(p->seq().right.size());
                return n >= 2 ? xr(p, pick(rng_, n - 1)) : nullptr;
            }
            case 6: {
                if (d < 2) return nullptr;
                Proof p = gen(d - 2);
                if (p->seq().left.empty()) return nullptr;
                return un(Rule::CL, un(Rule::WL, p, p->seq().left.back()));
            }
            case 7: {
                if (d < 2) return nullptr;
                Proof p = gen(d - 2);
                if (p->seq().right.empty()) return nullptr;
                return un(Rule::CR, un(Rule::WR, p, p->seq().right.front()));
            }
            case 8: {
                Proof p = gen(d - 1);
                if (p->seq().left.empty()) return nullptr;
                Formula a = p->seq().left.back(), b = formula(2);
                int i = 1 + pick(rng_, 2);
                return un(Rule::AndL, p, i == 1 ? Formula::binary(Op::And, a, b) : Formula::binary(Op::And, b, a), i);
            }
            case 9: {
                Proof p = gen(d - 1);
                if (p->seq().right.empty()) return nullptr;
                Formula a = p->seq().right.front(), b = formula(2);
                int i = 1 + pick(rng_, 2);
                return un(Rule::OrR, p, i == 1 ? Formula::binary(Op::Or, a, b) : Formula::binary(Op::Or, b, a), i);
            }
            case 10: {
                Proof p = gen(d - 1);
                if (p->seq().left.empty() || p->seq().right.empty()) return nullptr;
                return un(Rule::CImpR, p);
            }
            case 11: return binary(Rule::AndR, d);
            case 12: return binary(Rule::OrL, d);
            default: return coin(rng_, 0.5) && cut_ ? binary(Rule::Cut, d) : binary(Rule::CImpL, d);
        }
    }

    // Builds two premises and weakens their contexts into the shape the rule needs.
    Proof binary(Rule r, int d) {
        Proof p = gen(d - 1), q = gen(d - 1);
        const Sequent &s = p->seq(), &t = q->seq();
        auto tail = [](const std::vector<Formula>& v) { return std::vector<Formula>(v.begin() + 1, v.end()); };
        auto init = [](const std::vector<Formula>& v) { return std::vector<Formula>(v.begin(), v.end() - 1); };
        auto cat = [](std::vector<Formula> a, const std::vector<Formula>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        };
        switch (r) {
            case Rule::AndR: {
                if (s.right.empty() || t.right.empty()) return nullptr;
                auto l = multiset_union(s.left, t.left);
                auto g = multiset_union(tail(s.right), tail(t.right));
                p = widen(p, Sequent{l, cat({s.right[0]}, g)});
                q = widen(q, Sequent{l, cat({t.right[0]}, g)});
                return bin(r, p, q, Formula(), 0);
            }
            case Rule::OrL: {
                if (s.left.empty() || t.left.empty()) return nullptr;
                auto l = multiset_union(init(s.left), init(t.left));
                auto g = multiset_union(s.right, t.right);
                p = widen(p, Sequent{cat(l, {s.left.back()}), g});
                q = widen(q, Sequent{cat(l, {t.left.back()}), g});
                return bin(r, p, q, Formula(), 0);
            }
            case Rule::CImpL: {
                if (s.right.empty() || t.left.empty()) return nullptr;
                auto l = multiset_union(s.left, init(t.left));
                auto g = multiset_union(tail(s.right), t.right);
                p = widen(p, Sequent{l, cat({s.right[0]}, g)});
                q = widen(q, Sequent{cat(l, {t.left.back()}), g});
                return bin(r, p, q, Formula(), 0);
            }
            default: {
                if (s.right.empty()) return nullptr;
                Formula a = s.right[0];
                std::vector<Formula> ql = t.left;
                bool has = false;
                for (size_t k = 0; k < ql.size(); ++k)
                    if (ql[k] == a) {
                        q = left_to_end(q, static_cast<int>(k));
                        has = true;
                        break;
                    }
                if (!has) q = un(Rule::WL, q, a);
                return bin(Rule::Cut, p, q, Formula(), 0);
            }
        }
    }

    std::mt19937& rng_;
    bool cut_;
    OpSets ops_;
};

}  // namespace

Formula random_formula(std::mt19937& rng, Logic logic, int max_size, const std::vector<std::string>& atoms) {
    OpSets s = ops_of(logic);
    return random_sized(rng, s, 1 + pick(rng, std::max(1, max_size)), atoms);
}

Proof random_lk_proof(std::mt19937& rng, int max_depth, bool allow_cut) {
    LkGen g(rng, allow_cut);
    for (;;) {
        Proof p = g.gen(max_depth);
        if (proof_depth(p) <= max_depth) return p;
    }
}

std::vector<Formula> enumerate_formulas(Logic logic, int size, const std::vector<std::string>& atoms) {
    OpSets s = ops_of(logic);
    static std::map<std::tuple<int, int, std::vector<std::string>>, std::vector<Formula>> memo;
    auto key = std::make_tuple(static_cast<int>(logic), size, atoms);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Formula> out;
    if (size == 1) {
        for (const auto& a : atoms) out.push_back(Formula::var(a));
        for (Op o : s.consts) out.push_back(Formula::constant(o));
    } else if (size > 1) {
        for (Op o : s.unary)
            for (const auto& f : enumerate_formulas(logic, size - 1, atoms)) out.push_back(Formula::unary(o, f));
        for (int l = 1; l + 1 < size; ++l) {
            auto ls = enumerate_formulas(logic, l, atoms);
            auto rs = enumerate_formulas(logic, size - 1 - l, atoms);
            for (Op o : s.binary)
                for (const auto& a : ls)
                    for (const auto& b : rs) out.push_back(Formula::binary(o, a, b));
        }
    }
    memo[key] = out;
    return out;
}

}  // namespace seqcalc

namespace seqcalc {

namespace {

// Sequents whose proofs use the exponential structural rules; A and B are small random formulas.
Sequent exponential_template(std::mt19937& rng, Logic lg, int which) {
    Formula a = random_formula(rng, lg, 2), b = random_formula(rng, lg, 3);
    auto bang = Formula::bang;
    auto why = Formula::why;
    auto bin = Formula::binary;
    switch (which) {
        case 0: return {{bang(a)}, {bin(Op::Tensor, bang(a), bang(a))}};
        case 1: return {{bang(a)}, {bang(bin(Op::Tensor, a, a))}};
        case 2: return {{bin(Op::Par, why(a), why(a))}, {why(a)}};
        case 3: return {{why(bin(Op::Par, a, a))}, {why(a)}};
        case 4: return {{bang(a), b}, {b}};
        case 5: return {{b}, {why(a), b}};
        case 6: return {{bang(a)}, {bin(Op::Tensor, a, bang(a))}};
        case 7: return {{bang(why(a))}, {why(bang(a))}};
        case 8: return {{bang(why(a))}, {bin(Op::Tensor, bang(why(a)), bang(why(a)))}};
        case 9: return {{bang(bin(Op::Tensor, a, a))}, {bin(Op::Tensor, a, a)}};
        case 10: return {{bang(a)}, {bang(why(a))}};
        case 11: return {{why(a)}, {why(why(a))}};
        case 12: return {{bang(a)}, {bang(bang(a))}};
        case 13: return {{bang(bang(a))}, {bang(a)}};
        case 14: return {{bang(why(a)), bang(why(a))}, {why(bang(a))}};
        default: return {{bang(bang(a))}, {bang(bin(Op::With, a, bang(a)))}};
    }
}

}  // namespace

std::vector<Proof> cutfree_pool(std::mt19937& rng, Calc c, int count, int max_size, int depth_bound) {
    std::vector<Proof> pool;
    Logic lg = calc_logic(c);
    SearchOptions opt;
    opt.max_nodes = 20000;
    bool exp = op_in_language(Op::Bang, lg) && op_in_language(Op::Tensor, lg) && op_in_language(Op::Par, lg);
    for (int tries = 0; tries < 50 * count && static_cast<int>(pool.size()) < count; ++tries) {
        Sequent s;
        if (exp && coin(rng, 0.5)) {
            s = exponential_template(rng, lg, pick(rng, 16));
        } else {
            int nl = pick(rng, 3), nr = 1 + pick(rng, 2);
            for (int k = 0; k < nl; ++k) s.left.push_back(random_formula(rng, lg, max_size));
            for (int k = 0; k < nr; ++k) s.right.push_back(random_formula(rng, lg, max_size));
        }
        SearchResult r = search_cutfree(s, c, depth_bound, opt);
        if (r.found() && logical_depth(r.proof) > 0) pool.push_back(r.proof);
    }
    return pool;
}

Proof compose_with_cuts(std::mt19937& rng, const std::vector<Proof>& pool, int cuts, Rule cut_rule) {
    if (pool.empty()) return nullptr;
    // lhs is the cut formula in the left premise's succedent, rhs the one in the right premise's antecedent
    auto matches = [&](const Formula& lhs, const Formula& rhs) {
        if (cut_rule == Rule::CutWhy) return lhs.is_why() && lhs.lhs() == rhs;
        if (cut_rule == Rule::CutBang) return rhs.is_bang() && rhs.lhs() == lhs;
        return lhs == rhs;
    };
    Proof cur = pool[pick(rng, pool.size())];
    for (int k = 0; k < cuts; ++k) {
        // Candidates: (pool index, cur on the left?, index in cur, index in pool proof).
        std::vector<std::tuple<int, bool, int, int>> cands;
        const Sequent& s = cur->seq();
        for (int j = 0; j < static_cast<int>(pool.size()); ++j) {
            const Sequent& t = pool[j]->seq();
            for (int a = 0; a < static_cast<int>(s.right.size()); ++a)
                for (int b = 0; b < static_cast<int>(t.left.size()); ++b)
                    if (matches(s.right[a], t.left[b])) cands.emplace_back(j, true, a, b);
            for (int a = 0; a < static_cast<int>(s.left.size()); ++a)
                for (int b = 0; b < static_cast<int>(t.right.size()); ++b)
                    if (matches(t.right[b], s.left[a])) cands.emplace_back(j, false, a, b);
        }
        std::shuffle(cands.begin(), cands.end(), rng);
        Proof next;
        for (auto [j, cur_left, a, b] : cands) {
            try {
                if (cur_left)
                    next = checked(mk(cut_rule, Params{}, {right_to_front(cur, a), left_to_end(pool[j], b)}));
                else
                    next = checked(mk(cut_rule, Params{}, {right_to_front(pool[j], b), left_to_end(cur, a)}));
                break;
            } catch (const BuildError&) {
            }
        }
        if (!next) return nullptr;
        cur = next;
    }
    return cur;
}

}  // namespace seqcalc
