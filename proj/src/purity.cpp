#include "seqcalc/purity.hpp"

#include <algorithm>
#include <functional>

namespace seqcalc {

std::string to_string(const OccRef& o) {
    return path_string(o.path) + (o.right ? ":right:" : ":left:") + std::to_string(o.idx);
}

static void validate(const Proof& p, const OccRef& o, Proof& at) {
    at = node_at(p, o.path);
    if (!at) throw PurityError("invalid occurrence: no node at " + path_string(o.path));
    if (!at->ok()) throw PurityError("invalid occurrence: ill-formed node at " + path_string(o.path));
    const auto& side = o.right ? at->concl->right : at->concl->left;
    if (o.idx < 0 || static_cast<size_t>(o.idx) >= side.size())
        throw PurityError("invalid occurrence: index out of range at " + path_string(o.path));
}

std::set<OccRef> constituents(const Proof& p, const OccRef& o) {
    Proof at;
    validate(p, o, at);
    std::set<OccRef> out;
    std::function<void(const Proof&, const OccRef&)> go = [&](const Proof& node, const OccRef& cur) {
        if (!out.insert(cur).second) return;
        Flow fl = flow(*node);
        for (const auto& [a, b] : fl.links) {
            if (a.right == cur.right && a.idx == cur.idx) out.insert(OccRef{cur.path, b.right, b.idx});
            if (b.right == cur.right && b.idx == cur.idx) out.insert(OccRef{cur.path, a.right, a.idx});
        }
        for (const Occ& c : fl.of(cur.right, cur.idx)) {
            OccRef nxt{cur.path, c.right, c.idx};
            nxt.path.push_back(c.prem);
            go(node->prem[c.prem], nxt);
        }
    };
    go(at, o);
    return out;
}

bool has_purity_definition(Calc c) {
    switch (calc_parent(c)) {
        case Calc::ILC: case Calc::ILCi: case Calc::ILCd: case Calc::INC: case Calc::CLC: case Calc::LK: return true;
        default: return false;
    }
}

std::vector<Rule> purity_structural_rules(Calc c) {
    switch (calc_parent(c)) {
        case Calc::ILC: case Calc::ILCi: case Calc::ILCd: return {Rule::BangW, Rule::BangC, Rule::WhyW, Rule::WhyC};
        case Calc::INC: return {Rule::WL, Rule::CL, Rule::WhyW, Rule::WhyC};
        case Calc::CLC: return {Rule::BangW, Rule::BangC, Rule::WR, Rule::CR};
        case Calc::LK: return {Rule::WL, Rule::CL, Rule::WR, Rule::CR};
        default: throw PurityError(std::string("no purity definition for calculus ") + calc_name(c));
    }
}

namespace {

bool side_ok(const std::vector<Formula>& side, const std::vector<Formula>& subs, const std::vector<bool>* mask) {
    for (const auto& a : subs) {
        int count = 0;
        for (size_t k = 0; k < side.size(); ++k) {
            if (mask && !(*mask)[k]) continue;
            if (side[k] == a && ++count > 1) return false;
        }
    }
    return true;
}

}  // namespace

bool is_pure(const Proof& p, Calc c, const OccRef& o, PurityReading reading) {
    std::vector<Rule> structural = purity_structural_rules(c);
    Proof at;
    validate(p, o, at);
    Formula a = (o.right ? at->concl->right : at->concl->left)[o.idx];
    std::vector<Formula> subs = subformulas(a);
    std::set<OccRef> cons = constituents(p, o);

    // Clause 1: no weakening/contraction introduces a constituent.
    for (const auto& occ : cons) {
        Proof n = node_at(p, occ.path);
        if (std::find(structural.begin(), structural.end(), n->rule) == structural.end()) continue;
        Flow fl = flow(*n);
        for (const Occ& pr : fl.principal)
            if (pr.right == occ.right && pr.idx == occ.idx) return false;
    }

    // Clause 2: each subformula at most once per side in every sequent of the subtree.
    std::function<bool(const Proof&, std::vector<int>&)> walk = [&](const Proof& n, std::vector<int>& path) {
        const Sequent& s = n->seq();
        if (reading == PurityReading::Global) {
            if (!side_ok(s.left, subs, nullptr) || !side_ok(s.right, subs, nullptr)) return false;
        } else {
            std::vector<bool> ml(s.left.size()), mr(s.right.size());
            for (size_t k = 0; k < s.left.size(); ++k) ml[k] = cons.count(OccRef{path, false, static_cast<int>(k)}) > 0;
            for (size_t k = 0; k < s.right.size(); ++k) mr[k] = cons.count(OccRef{path, true, static_cast<int>(k)}) > 0;
            if (!side_ok(s.left, subs, &ml) || !side_ok(s.right, subs, &mr)) return false;
        }
        for (size_t k = 0; k < n->prem.size(); ++k) {
            path.push_back(static_cast<int>(k));
            bool ok = walk(n->prem[k], path);
            path.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    std::vector<int> path = o.path;
    return walk(at, path);
}

std::string TractabilityReport::text() const {
    if (ok) return "verdict: tractable";
    return "verdict: not tractable\npath: " + path_string(path) + "\nclause: " + std::to_string(clause) + "\n" + message;
}

TractabilityReport is_tractable(const Proof& p, Calc c, PurityReading reading) {
    Calc parent = calc_parent(c);
    if (!has_purity_definition(parent)) throw PurityError(std::string("no tractability definition for ") + calc_name(c));
    Rule cut_rule = Rule::Cut;
    if (parent == Calc::INC) cut_rule = Rule::CutWhy;
    if (parent == Calc::CLC) cut_rule = Rule::CutBang;
    bool ilc = parent == Calc::ILC || parent == Calc::ILCi || parent == Calc::ILCd;

    TractabilityReport rep;
    std::function<bool(const Proof&, std::vector<int>&)> walk = [&](const Proof& n, std::vector<int>& path) {
        if (ilc && n->rule == Rule::WhyBangR) {
            rep = {false, path, 1, "rule why-bang-r (?!R) occurs"};
            return false;
        }
        if (n->rule == cut_rule) {
            std::vector<int> lp = path, rp = path;
            lp.push_back(0);
            rp.push_back(1);
            OccRef lo{lp, true, 0};
            OccRef ro{rp, false, static_cast<int>(n->prem[1]->seq().left.size()) - 1};
            bool lpure = is_pure(p, parent, lo, reading);
            bool rpure = !lpure && is_pure(p, parent, ro, reading);
            if (!lpure && !rpure) {
                rep = {false, path, 2,
                       "cut on " + to_string(n->prem[1]->seq().left.back()) +
                           ": neither the left premise's occurrence nor the right premise's occurrence is pure"};
                return false;
            }
        }
        for (size_t k = 0; k < n->prem.size(); ++k) {
            path.push_back(static_cast<int>(k));
            bool ok = walk(n->prem[k], path);
            path.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    std::vector<int> path;
    walk(p, path);
    return rep;
}

}  // namespace seqcalc
