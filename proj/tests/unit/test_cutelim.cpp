#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "seqcalc/cutelim.hpp"
#include "seqcalc/generate.hpp"

using namespace seqcalc;
using seqcalc::test::F;
using seqcalc::test::load;
using seqcalc::test::S;

namespace {

Proof X() { return id(Formula::var("X")); }
Proof bang_id() { return un(Rule::BangR, un(Rule::BangD, X())); }  // !X |- !X

std::vector<std::string> trace_of(const Proof& p, Calc c, Proof* out = nullptr) {
    std::vector<std::string> names;
    CutElimOptions opt;
    opt.on_step = [&](const StepInfo& s, const Proof&) { names.push_back(s.case_name); };
    Proof q = eliminate_cuts(p, c, opt);
    if (out) *out = q;
    return names;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("select_cut examples") {
    CHECK_FALSE(select_cut(load("lem_lk.pf", Calc::LK)).has_value());

    Proof demo = load("cut_pure_demo.pf", Calc::ILC);
    auto s = select_cut(demo);
    REQUIRE(s);
    CHECK(s->path.empty());
    CHECK(s->cut_formula == Formula::var("X"));
    CHECK(s->rank == 0);

    // cut on X below a cut on !X
    Proof upper = bin(Rule::Cut, id(F("!X")), un(Rule::BangD, X()));
    Proof lower = bin(Rule::Cut, upper, X());
    auto t = select_cut(lower);
    REQUIRE(t);
    CHECK(t->path == std::vector<int>{0});
    CHECK(t->cut_formula == F("!X"));
    CHECK(t->rank == 1);
    CHECK(t->site_depth == 1);
}

TEST_CASE("select_cut prefers the deepest site among equal ranks") {
    Proof inner = bin(Rule::Cut, X(), X());
    Proof outer = bin(Rule::Cut, inner, X());
    auto s = select_cut(outer);
    REQUIRE(s);
    CHECK(s->path == std::vector<int>{0});
    Proof both = bin(Rule::TensorR, inner, inner);
    auto t = select_cut(both);
    REQUIRE(t);
    CHECK(t->path == std::vector<int>{0});
}

TEST_CASE("merge_multicut and unfold") {
    Proof demo = load("cut_pure_demo.pf", Calc::ILC);
    Proof m = merge_multicut(demo, *select_cut(demo));
    CHECK(m->rule == Rule::CutLn);
    CHECK(m->params.pos.size() == 1);
    CHECK(m->seq() == demo->seq());
    CHECK(check_proof(m, Calc::ILC, {true, true}).ok);
    CHECK_FALSE(check_proof(m, Calc::ILC).ok);
    Proof u = unfold_multicut(m);
    CHECK(u->seq() == demo->seq());
    CHECK(check_proof(u, Calc::ILC).ok);

    // a chain of cuts on the same formula folds into one multicut
    Proof q = bang_id();
    Proof r2 = bin(Rule::TensorR, un(Rule::BangD, X()), un(Rule::BangD, X()));  // !X, !X |- X tensor X
    Proof chain = bin(Rule::Cut, q, bin(Rule::Cut, q, r2));
    CHECK(check_proof(chain, Calc::ILC).ok);
    CutSite outer = site_at(chain, {});
    Proof folded = merge_multicut(chain, outer);
    Proof node = node_at(folded, outer.path);
    CHECK(node->rule == Rule::CutLn);
    CHECK(node->params.pos.size() == 2);
    CHECK(folded->seq() == chain->seq());
    CHECK(unfold_multicut(node)->seq() == node->seq());

    CHECK_THROWS_AS(merge_multicut(load("lem_lk.pf", Calc::LK), CutSite{}), CutElimError);
}

TEST_CASE("empty multicut does nothing on the right hypothesis") {
    // CutL^0: no occurrence of the cut formula is consumed on the right
    Proof p = bang_id();
    Proof m = mk(Rule::CutLn, Params{.at = 0, .pos = {}}, {p, X()});
    REQUIRE(m->ok());
    StepInfo info;
    Proof r = cut_step(m, site_at(m, {}), Calc::ILC, &info);
    CHECK(info.case_name == "empty-multicut");
    CHECK(r->seq() == m->seq());
}

TEST_CASE("Id against Id reduces to a single Id") {
    Proof out;
    auto names = trace_of(load("cut_pure_demo.pf", Calc::ILC), Calc::ILC, &out);
    CHECK(out->rule == Rule::Id);
    CHECK(out->seq() == S("X |- X"));
    CHECK(names.front() == "merge");
}

TEST_CASE("(!R,!C) principal step yields a multicut with two positions") {
    Proof q = bang_id();
    Proof r = un(Rule::BangC, bin(Rule::TensorR, un(Rule::BangD, X()), un(Rule::BangD, X())));
    Proof cut = bin(Rule::Cut, q, r);
    REQUIRE(check_proof(cut, Calc::ILC).ok);
    Proof m = merge_multicut(cut, *select_cut(cut));
    StepInfo info;
    Proof step = cut_step(m, *select_cut(m), Calc::ILC, &info);
    CHECK(info.case_name == "(!R,!C)-cut");
    Proof multi;
    std::function<void(const Proof&)> find = [&](const Proof& n) {
        if (n->rule == Rule::CutLn && !multi) multi = n;
        for (const auto& c : n->prem) find(c);
    };
    find(step);
    REQUIRE(multi);
    CHECK(multi->params.pos.size() == 2);
    CHECK(step->seq() == cut->seq());
    Proof out;
    trace_of(cut, Calc::ILC, &out);
    CHECK(cut_free(out));
    CHECK(check_proof(out, Calc::ILC).ok);
    CHECK(out->seq() == cut->seq());
}

TEST_CASE("(topR,topL) principal case") {
    Proof cut = bin(Rule::Cut, leaf(Rule::TopR), un(Rule::TopL, X()));
    REQUIRE(check_proof(cut, Calc::ILC).ok);
    Proof out;
    auto names = trace_of(cut, Calc::ILC, &out);
    CHECK(names == std::vector<std::string>{"merge", "(topR,topL)-cut"});
    CHECK(out->rule == Rule::Id);
}

TEST_CASE("Dist cut block reduces in ILC_delta") {
    Proof out;
    auto names = trace_of(load("dist_cut_block.pf", Calc::ILCd), Calc::ILCd, &out);
    CHECK(out->rule == Rule::Dist);
    CHECK(out->seq() == S("!?X |- ?!X"));
    CHECK(contains(names, "eta-identity-cut"));
}

TEST_CASE("ILC_rho: pure (!R,!?L) case goes through the mixed cut") {
    // !R(?D(!D(Id X))) against !?L(?D(!R(!D(Id X)))) with a pure !?X on the left
    Proof left = un(Rule::BangR, un(Rule::WhyD, un(Rule::BangD, X())));
    Proof right = load("dist_a.pf", Calc::ILCr);
    Proof cut = bin(Rule::Cut, left, right);
    REQUIRE(check_proof(cut, Calc::ILCr).ok);
    Proof out;
    auto names = trace_of(cut, Calc::ILCr, &out);
    CHECK(contains(names, "(!R,!?L)-cut pure"));
    CHECK(cut_free(out));
    CHECK(check_proof(out, Calc::ILCr).ok);
    CHECK(out->seq() == cut->seq());
}

TEST_CASE("eliminate_cuts errors") {
    Proof parx = load("parx_tensor_ilci.pf", Calc::ILCi);
    try {
        eliminate_cuts(parx, Calc::ILCi);
        FAIL("expected calculus-unsupported");
    } catch (const CutElimError& e) {
        CHECK(e.kind == "calculus-unsupported");
    }
    try {
        eliminate_cuts(parx, Calc::ILCr);
        FAIL("expected precondition");
    } catch (const CutElimError& e) {
        CHECK(e.kind == "precondition");
    }
    CHECK_THROWS_AS(eliminate_cuts(load("lem_lk.pf", Calc::LK), Calc::LK), CutElimError);

    Proof chain = bin(Rule::Cut, bang_id(), bin(Rule::Cut, bang_id(), bang_id()));
    CutElimOptions opt;
    opt.fuel = 1;
    try {
        eliminate_cuts(chain, Calc::ILC, opt);
        FAIL("expected step-limit-exceeded");
    } catch (const CutElimError& e) {
        CHECK(e.kind == "step-limit-exceeded");
    }
}

TEST_CASE("the rho gap proof fails with no-matching-case") {
    Proof gap = load("rho_gap.pf", Calc::ILCr);
    REQUIRE(check_proof(gap, Calc::ILCr).ok);
    try {
        eliminate_cuts(gap, Calc::ILCr);
        FAIL("expected no-matching-case");
    } catch (const CutElimError& e) {
        CHECK(e.kind == "no-matching-case");
        CHECK(std::string(e.what()).find("?X |- X") != std::string::npos);
    }
}

TEST_CASE("cut-free input is returned unchanged") {
    Proof lem = load("dist_a.pf", Calc::ILCr);
    CHECK(eliminate_cuts(lem, Calc::ILCr) == lem);
}

TEST_CASE("Id-cut chains on !X") {
    for (int n = 1; n <= 10; ++n) {
        Proof p = id(F("!X"));
        for (int k = 0; k < n; ++k) p = k % 2 ? bin(Rule::Cut, id(F("!X")), p) : bin(Rule::Cut, p, id(F("!X")));
        REQUIRE(check_proof(p, Calc::ILC).ok);
        Proof out = eliminate_cuts(p, Calc::ILC);
        CHECK(out->rule == Rule::Id);
        CHECK(out->seq() == S("!X |- !X"));
    }
}

TEST_CASE("property: steps preserve the end sequent and check status") {
    for (Calc c : {Calc::ILC, Calc::ILCr, Calc::INC, Calc::CLC}) {
        std::mt19937 rng(51 + static_cast<int>(c));
        auto pool = cutfree_pool(rng, c, 40);
        Rule cut = c == Calc::INC ? Rule::CutWhy : c == Calc::CLC ? Rule::CutBang : Rule::Cut;
        int runs = 0;
        for (int k = 0; k < 60; ++k) {
            Proof p = compose_with_cuts(rng, pool, 1 + k % 3, cut);
            if (!p || !check_proof(p, c).ok) continue;
            ++runs;
            Sequent end = p->seq();
            CutElimOptions opt;
            opt.on_step = [&](const StepInfo& s, const Proof& q) {
                CHECK_MESSAGE(q->seq() == end, s.case_name);
                CHECK_MESSAGE(check_proof(q, c, {true, false}).ok, s.case_name);
            };
            Proof out = eliminate_cuts(p, c, opt);
            CHECK(cut_free(out));
            CHECK(out->seq() == end);
            CHECK(check_proof(out, c).ok);
        }
        CHECK(runs > 10);
    }
}

TEST_CASE("property: ILC_delta fails only on cuts against Dist") {
    std::mt19937 rng(57);
    auto pool = cutfree_pool(rng, Calc::ILCd, 40);
    int ok = 0, dist = 0;
    for (int k = 0; k < 80; ++k) {
        Proof p = compose_with_cuts(rng, pool, 1 + k % 3);
        if (!p) continue;
        Proof last = p;
        CutElimOptions opt;
        opt.on_step = [&](const StepInfo&, const Proof& q) { last = q; };
        try {
            Proof out = eliminate_cuts(p, Calc::ILCd, opt);
            CHECK(cut_free(out));
            CHECK(check_proof(out, Calc::ILCd).ok);
            ++ok;
        } catch (const CutElimError& e) {
            REQUIRE(e.kind == "no-matching-case");
            Proof node = node_at(last, e.path);
            bool has_dist = false;
            for (const auto& prem : node->prem) has_dist = has_dist || prem->rule == Rule::Dist;
            CHECK_MESSAGE(has_dist, e.what());
            ++dist;
        }
    }
    CHECK(ok > 10);
    MESSAGE("ILC_delta: ", ok, " eliminated, ", dist, " stuck on a Dist premise");
}
