#include "seqcalc/build.hpp"

#include <algorithm>

namespace seqcalc {

Proof checked(Proof p) {
    if (!p->ok()) {
        std::string msg = std::string("cannot build ") + rule_name(p->rule) + ": " + p->error;
        for (const auto& q : p->prem)
            if (q->ok()) msg += "\n  premise: " + to_string(q->seq());
        throw BuildError(msg);
    }
    return p;
}

Proof leaf(Rule r) { return checked(mk(r, Params{}, {})); }

Proof id(Formula a) {
    Params q;
    q.intro = a;
    return checked(mk(Rule::Id, q, {}));
}

Proof un(Rule r, Proof p, Formula intro, int i) {
    Params q;
    q.intro = intro;
    q.i = i;
    return checked(mk(r, q, {std::move(p)}));
}

Proof bin(Rule r, Proof a, Proof b, Formula intro, int i) {
    Params q;
    q.intro = intro;
    q.i = i;
    return checked(mk(r, q, {std::move(a), std::move(b)}));
}

Proof xl(Proof p, int at) {
    Params q;
    q.at = at;
    return checked(mk(Rule::XL, q, {std::move(p)}));
}

Proof xr(Proof p, int at) {
    Params q;
    q.at = at;
    return checked(mk(Rule::XR, q, {std::move(p)}));
}

bool is_permutation_of(const std::vector<Formula>& a, const std::vector<Formula>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& f : a) {
        bool found = false;
        for (size_t k = 0; k < b.size(); ++k) {
            if (!used[k] && b[k] == f) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool sequent_permutation(const Sequent& a, const Sequent& b) {
    return is_permutation_of(a.left, b.left) && is_permutation_of(a.right, b.right);
}

namespace {

// Target index of each current position, matching equal formulas in order.
std::vector<int> matching(const std::vector<Formula>& cur, const std::vector<Formula>& tgt) {
    std::vector<int> m(cur.size(), -1);
    std::vector<bool> used(tgt.size(), false);
    for (size_t k = 0; k < cur.size(); ++k) {
        for (size_t j = 0; j < tgt.size(); ++j) {
            if (!used[j] && tgt[j] == cur[k]) {
                used[j] = true;
                m[k] = static_cast<int>(j);
                break;
            }
        }
        if (m[k] < 0) throw BuildError("permute: sides are not permutations of each other");
    }
    return m;
}

Proof sort_side(Proof p, std::vector<int> m, bool right) {
    // Bubble sort with adjacent swaps; each swap is one exchange.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (size_t k = 0; k + 1 < m.size(); ++k) {
            if (m[k] > m[k + 1]) {
                std::swap(m[k], m[k + 1]);
                p = right ? xr(p, static_cast<int>(k)) : xl(p, static_cast<int>(k));
                swapped = true;
            }
        }
    }
    return p;
}

}  // namespace

Proof permute_to(const Proof& p, const Sequent& target) {
    const Sequent& s = checked(p)->seq();
    if (s.left.size() != target.left.size() || s.right.size() != target.right.size())
        throw BuildError("permute: size mismatch: " + to_string(s) + " vs " + to_string(target));
    Proof q = sort_side(p, matching(s.left, target.left), false);
    q = sort_side(q, matching(q->seq().right, target.right), true);
    return q;
}

Proof move_left(const Proof& p, int idx, int to) {
    Proof q = p;
    while (idx < to) {
        q = xl(q, idx);
        ++idx;
    }
    while (idx > to) {
        q = xl(q, idx - 1);
        --idx;
    }
    return q;
}

Proof move_right(const Proof& p, int idx, int to) {
    Proof q = p;
    while (idx < to) {
        q = xr(q, idx);
        ++idx;
    }
    while (idx > to) {
        q = xr(q, idx - 1);
        --idx;
    }
    return q;
}

Proof left_to_end(const Proof& p, int idx) {
    return move_left(p, idx, static_cast<int>(p->seq().left.size()) - 1);
}

Proof right_to_front(const Proof& p, int idx) { return move_right(p, idx, 0); }

Proof weaken_left(const Proof& p, Formula f, Rule r) { return un(r, p, f); }
Proof weaken_right(const Proof& p, Formula f, Rule r) { return un(r, p, f); }

Proof contract_left(const Proof& p, int i, int j, Rule r) {
    if (i > j) std::swap(i, j);
    int n = static_cast<int>(p->seq().left.size());
    Proof q = move_left(p, j, n - 1);
    q = move_left(q, i, n - 2);
    return un(r, q);
}

Proof contract_right(const Proof& p, int i, int j, Rule r) {
    if (i > j) std::swap(i, j);
    Proof q = move_right(p, i, 0);
    q = move_right(q, j, 1);
    return un(r, q);
}

}  // namespace seqcalc
