#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support.hpp"
#include "seqcalc/generate.hpp"
#include "seqcalc/translations.hpp"

using namespace seqcalc;
using seqcalc::test::F;
using seqcalc::test::load;
using seqcalc::test::S;

TEST_CASE("end_sequent examples") {
    CHECK(end_sequent(load("lem_lk.pf", Calc::LK), Calc::LK) == S("|- ((~ X) or X)", Logic::CL));
    CHECK(end_sequent(id(Formula::var("X"))) == S("X |- X"));
    CHECK(end_sequent(load("parx_tensor_ilci.pf", Calc::ILCi), Calc::ILCi) == S("!(X par X) |- ?(X tensor X)"));
}

TEST_CASE("end_sequent errors") {
    Proof bad = mk(Rule::ParR, {id(Formula::var("X"))});
    CHECK_THROWS(end_sequent(bad));
    CHECK_THROWS(end_sequent(load("lem_lk.pf", Calc::LK), Calc::ILC));
}

TEST_CASE("check_proof examples") {
    CHECK(check_proof(load("lem_lk.pf", Calc::LK), Calc::LK).ok);

    CheckReport lj = check_proof(load("lem_lj.pf", Calc::LJ), Calc::LJ);
    CHECK_FALSE(lj.ok);
    CHECK(lj.kind == "side-condition");
    CHECK(lj.message.find("2 formulas on the right") != std::string::npos);

    CheckReport rho = check_proof(load("parx_tensor_ilci.pf", Calc::ILCr), Calc::ILCr);
    CHECK_FALSE(rho.ok);
    CHECK(rho.kind == "global-predicate");
    CHECK(rho.path.empty());

    CHECK(check_proof(load("parx_tensor_ilci.pf", Calc::ILCi), Calc::ILCi).ok);
    CheckReport ilc = check_proof(load("parx_tensor_ilci.pf", Calc::ILC), Calc::ILC);
    CHECK_FALSE(ilc.ok);
    CHECK(ilc.kind == "rule-not-in-calculus");
}

TEST_CASE("Dist derivations") {
    for (const char* f : {"dist_a.pf", "dist_b.pf"}) {
        Proof p = load(f, Calc::ILCi);
        CheckReport r = check_proof(p, Calc::ILCi);
        CHECK(r.ok);
        CHECK(r.end == S("!?X |- ?!X"));
        CHECK(proof_depth(p) <= 6);
        CHECK_FALSE(check_proof(p, Calc::ILC).ok);
    }
    CHECK(check_proof(load("dist_cut_block.pf", Calc::ILCd), Calc::ILCd).ok);
    CHECK_FALSE(check_proof(load("dist_cut_block.pf", Calc::ILCd), Calc::ILC).ok);
}

TEST_CASE("proof_depth examples") {
    Proof x = id(Formula::var("X"));
    CHECK(proof_depth(x) == 0);
    CHECK(proof_depth(un(Rule::WhyD, x)) == 1);
    CHECK(proof_depth(load("lem_lk.pf", Calc::LK)) == 6);
    CHECK(proof_depth(leaf(Rule::TTR)) == 0);
}

TEST_CASE("in_subcalculus examples") {
    CHECK(in_subcalculus(load("parx_tensor_ilci.pf", Calc::ILCi), Calc::ILCi, "!?"));
    CHECK_FALSE(in_subcalculus(id(Formula::var("X")), Calc::ILC, "!"));
    CHECK(in_subcalculus(id(F("!X")), Calc::ILC, "!"));
    CHECK_FALSE(in_subcalculus(id(F("!X")), Calc::ILC, "?"));
    CHECK_THROWS(in_subcalculus(load("lem_lj.pf", Calc::LJ), Calc::LJ, "!"));
}

TEST_CASE("ILC_rho excludes ?!R") {
    Proof p = load("dist_b.pf", Calc::ILCi);
    CHECK(check_proof(p, Calc::ILCi).ok);
    CHECK_FALSE(check_proof(p, Calc::ILCr).ok);
    CHECK(check_proof(load("dist_a.pf", Calc::ILCi), Calc::ILCr).ok);
}

TEST_CASE("INC and CLC context shapes") {
    // ?L^? demands ?-shaped right context in INC
    Proof p = un(Rule::WhyLWhy, un(Rule::WhyD, id(Formula::var("X"))));
    CHECK(check_proof(p, Calc::INC).ok);
    Proof bad = mk(Rule::WhyLWhy, {id(Formula::var("X"))});
    CHECK_FALSE(check_proof(bad, Calc::INC).ok);
    // !R^! demands !-shaped left context in CLC
    Proof q = un(Rule::BangRBang, un(Rule::BangD, id(Formula::var("X"))));
    CHECK(check_proof(q, Calc::CLC).ok);
    CHECK_FALSE(check_proof(mk(Rule::BangRBang, {id(Formula::var("X"))}), Calc::CLC).ok);
}

TEST_CASE("property: determinism of check_proof") {
    std::mt19937 rng(21);
    for (int k = 0; k < 200; ++k) {
        Proof p = random_lk_proof(rng, 6);
        CheckReport a = check_proof(p, Calc::LK), b = check_proof(p, Calc::LK);
        CHECK(a.ok == b.ok);
        CHECK(a.end == b.end);
        Proof q = parse_proof(print_proof(p), Logic::CL);
        CHECK(structurally_equal(p, q));
        CHECK(check_proof(q, Calc::LK).end == a.end);
    }
}

TEST_CASE("property: ILC proofs check in ILC_iota") {
    std::mt19937 rng(22);
    auto pool = cutfree_pool(rng, Calc::ILC, 60);
    REQUIRE(pool.size() >= 30);
    for (const auto& p : pool) {
        CHECK(check_proof(p, Calc::ILC).ok);
        CHECK(check_proof(p, Calc::ILCi).ok);
    }
    for (int k = 0; k < 100; ++k) {
        Proof c = compose_with_cuts(rng, pool, 1 + k % 3);
        if (!c) continue;
        CHECK(check_proof(c, Calc::ILC).ok);
        CHECK(check_proof(c, Calc::ILCi).ok);
    }
}

TEST_CASE("property: LLJ and LJ proofs embed") {
    std::mt19937 rng(23);
    auto llj = cutfree_pool(rng, Calc::LLJ, 40);
    llj.push_back(load("llj_bang_uimp.pf", Calc::LLJ));
    for (const auto& p : llj) {
        Proof q = embed(p, Edge::LljIlc);
        CheckReport r = check_proof(q, Calc::ILC);
        CHECK(r.ok);
        CHECK(r.end == translate_sequent(p->seq(), Edge::LljIlc));
    }
    auto lj = cutfree_pool(rng, Calc::LJ, 40);
    lj.push_back(load("lj_modus_ponens.pf", Calc::LJ));
    int embedded = 0;
    for (const auto& p : lj) {
        bool has_wr = false;
        std::function<void(const Proof&)> scan = [&](const Proof& n) {
            if (n->rule == Rule::WR || n->rule == Rule::Cut) has_wr = true;
            for (const auto& c : n->prem) scan(c);
        };
        scan(p);
        if (has_wr) {
            CHECK_THROWS_AS(embed(p, Edge::LjInc), TranslationError);
            continue;
        }
        Proof q = embed(p, Edge::LjInc);
        CHECK(check_proof(q, Calc::INC).ok);
        CHECK(q->seq() == p->seq());
        ++embedded;
    }
    CHECK(embedded > 0);
}

TEST_CASE("property: exchange completeness") {
    std::mt19937 rng(24);
    auto pool = cutfree_pool(rng, Calc::ILC, 40);
    for (const auto& p : pool) {
        Sequent s = p->seq();
        for (int k = 0; k < 4; ++k) {
            Sequent t = s;
            std::shuffle(t.left.begin(), t.left.end(), rng);
            std::shuffle(t.right.begin(), t.right.end(), rng);
            Proof q = permute_to(p, t);
            CheckReport r = check_proof(q, Calc::ILC);
            CHECK(r.ok);
            CHECK(r.end == t);
        }
    }
}

TEST_CASE("property: subformula property of cut-free ILC proofs") {
    std::mt19937 rng(25);
    auto pool = cutfree_pool(rng, Calc::ILC, 60);
    for (const auto& p : pool) {
        Sequent root = p->seq();
        std::function<void(const Proof&)> walk = [&](const Proof& n) {
            for (int side = 0; side < 2; ++side)
                for (const auto& f : side ? n->seq().right : n->seq().left) {
                    bool found = false;
                    for (const auto& g : root.left) found = found || is_subformula(f, g);
                    for (const auto& g : root.right) found = found || is_subformula(f, g);
                    CHECK(found);
                }
            for (const auto& c : n->prem) walk(c);
        };
        walk(p);
    }
}
