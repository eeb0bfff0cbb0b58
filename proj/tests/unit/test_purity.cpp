#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "seqcalc/generate.hpp"
#include "seqcalc/purity.hpp"

using namespace seqcalc;
using seqcalc::test::F;
using seqcalc::test::load;

TEST_CASE("constituents examples") {
    Proof x = id(Formula::var("X"));
    auto c = constituents(x, OccRef{{}, true, 0});
    CHECK(c == std::set<OccRef>{OccRef{{}, false, 0}, OccRef{{}, true, 0}});

    Proof parx = load("parx_tensor_ilci.pf", Calc::ILCi);
    auto root = constituents(parx, OccRef{{0}, false, 0});
    CHECK(root.count(OccRef{{0, 0, 0, 0, 0, 0, 0}, false, 0}));
    CHECK(node_at(parx, {0, 0, 0, 0, 0, 0, 0})->seq().left[0] == F("(X par X)"));

    Proof w = un(Rule::WhyW, x, F("?Y"));
    CHECK(w->seq().right[0] == F("?Y"));
    CHECK(constituents(w, OccRef{{}, true, 0}) == std::set<OccRef>{OccRef{{}, true, 0}});
}

TEST_CASE("constituents errors") {
    Proof x = id(Formula::var("X"));
    CHECK_THROWS(constituents(x, OccRef{{}, true, 3}));
    CHECK_THROWS(constituents(x, OccRef{{0}, true, 0}));
}

TEST_CASE("is_pure examples") {
    Proof x = id(Formula::var("X"));
    CHECK(is_pure(x, Calc::ILC, OccRef{{}, true, 0}));
    CHECK(is_pure(x, Calc::ILC, OccRef{{}, false, 0}));

    Proof parx = load("parx_tensor_ilci.pf", Calc::ILCi);
    CHECK_FALSE(is_pure(parx, Calc::ILCi, OccRef{{0}, true, 0}));
    CHECK_FALSE(is_pure(parx, Calc::ILCi, OccRef{{1}, false, 0}));

    Proof demo = load("cut_pure_demo.pf", Calc::ILC);
    CHECK(is_pure(demo, Calc::ILC, OccRef{{0}, true, 0}));
    CHECK(is_pure(demo, Calc::ILC, OccRef{{1}, false, 0}));

    // !C on a constituent
    Proof c = un(Rule::BangC, bin(Rule::TensorR, un(Rule::BangD, x), un(Rule::BangD, x)));
    CHECK_FALSE(is_pure(c, Calc::ILC, OccRef{{}, false, 0}));
    // two copies of X on one side
    Proof two = bin(Rule::TensorR, x, x);
    CHECK_FALSE(is_pure(two, Calc::ILC, OccRef{{}, false, 0}));
    CHECK(is_pure(two, Calc::ILC, OccRef{{}, false, 0}, PurityReading::Constituent));
}

TEST_CASE("purity uses the calculus's structural rules") {
    Proof x = id(Formula::var("X"));
    Proof wl = un(Rule::WL, x, Formula::var("Y"));
    CHECK_FALSE(is_pure(wl, Calc::INC, OccRef{{}, false, 1}));
    CHECK(is_pure(wl, Calc::INC, OccRef{{}, false, 0}));
    CHECK(is_pure(wl, Calc::INC, OccRef{{}, true, 0}));
    CHECK_THROWS_AS(is_pure(x, Calc::LLK, OccRef{{}, true, 0}), PurityError);
}

TEST_CASE("is_tractable examples") {
    TractabilityReport r = is_tractable(load("parx_tensor_ilci.pf", Calc::ILCr), Calc::ILCr);
    CHECK_FALSE(r.ok);
    CHECK(r.clause == 2);
    CHECK(r.path.empty());

    CHECK(is_tractable(load("lem_lk.pf", Calc::LKr), Calc::LKr).ok);
    CHECK(is_tractable(load("cut_pure_demo.pf", Calc::ILCr), Calc::ILCr).ok);

    TractabilityReport b = is_tractable(load("dist_b.pf", Calc::ILCi), Calc::ILCr);
    CHECK_FALSE(b.ok);
    CHECK(b.clause == 1);
}

TEST_CASE("property: purity is hereditary") {
    std::mt19937 rng(31);
    for (Calc c : {Calc::ILC, Calc::INC, Calc::CLC}) {
        auto pool = cutfree_pool(rng, c, 30);
        for (int k = 0; k < 60; ++k) {
            Proof p = k < static_cast<int>(pool.size()) ? pool[k] : compose_with_cuts(rng, pool, 1 + k % 2);
            if (!p) continue;
            const Sequent& s = p->seq();
            for (int side = 0; side < 2; ++side)
                for (int i = 0; i < static_cast<int>(side ? s.right.size() : s.left.size()); ++i) {
                    OccRef o{{}, side == 1, i};
                    if (!is_pure(p, c, o)) continue;
                    for (const auto& sub : constituents(p, o)) CHECK(is_pure(p, c, sub));
                }
        }
    }
}

TEST_CASE("property: cut-free proofs without ?!R are tractable") {
    std::mt19937 rng(32);
    for (Calc c : {Calc::ILC, Calc::INC, Calc::CLC, Calc::LK}) {
        for (const auto& p : cutfree_pool(rng, c, 30)) {
            Calc rho = c == Calc::ILC ? Calc::ILCr : c == Calc::INC ? Calc::INCr : c == Calc::CLC ? Calc::CLCr : Calc::LKr;
            CHECK(is_tractable(p, rho).ok);
        }
    }
}
