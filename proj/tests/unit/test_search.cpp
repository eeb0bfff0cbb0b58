#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "seqcalc/generate.hpp"
#include "seqcalc/search.hpp"

using namespace seqcalc;
using seqcalc::test::load;
using seqcalc::test::S;

TEST_CASE("search examples") {
    SearchResult a = search_cutfree(S("|- (neg X par X)"), Calc::ILC, 5);
    CHECK(a.found());
    CHECK(check_proof(a.proof, Calc::ILC).ok);

    SearchResult b = search_cutfree(S("!?X |- ?!X"), Calc::ILC, 12);
    CHECK(b.verdict == SearchResult::Verdict::Exhausted);
    CHECK(b.bound == 12);

    for (Calc c : kAllCalcs) {
        SearchResult r = search_cutfree(S("X |- X", calc_logic(c)), c, 0);
        CHECK(r.found());
        CHECK(r.proof->rule == Rule::Id);
    }
}

TEST_CASE("weakly distributive goals") {
    SearchResult i = search_cutfree(S("!?X |- ?!X"), Calc::ILCi, 6);
    CHECK(i.found());
    CHECK(logical_depth(i.proof) <= 6);
    SearchResult d = search_cutfree(S("!?X |- ?!X"), Calc::ILCd, 0);
    CHECK(d.found());
    CHECK(d.proof->rule == Rule::Dist);
}

TEST_CASE("excluded middle") {
    CHECK(search_cutfree(S("|- ((~ X) or X)", Logic::CL), Calc::LK, 8).found());
    CHECK(search_cutfree(S("|- ((X star) or X)", Logic::IL), Calc::LJ, 10).verdict ==
          SearchResult::Verdict::Exhausted);
}

TEST_CASE("search errors and limits") {
    CHECK_THROWS_AS(search_cutfree(S("!X |- !X"), Calc::LK, 3), LanguageError);
    SearchOptions opt;
    opt.max_nodes = 5;
    SearchResult r = search_cutfree(S("!?X |- ?!X"), Calc::ILC, 12, opt);
    CHECK(r.verdict == SearchResult::Verdict::Limit);
}

TEST_CASE("found proofs end exactly in the goal") {
    SearchResult r = search_cutfree(S("Y, X |- (X tensor Y)"), Calc::ILC, 4);
    REQUIRE(r.found());
    CHECK(r.proof->seq() == S("Y, X |- (X tensor Y)"));
}

TEST_CASE("property: soundness and monotonicity") {
    std::mt19937 rng(61);
    for (Calc c : {Calc::ILC, Calc::INC, Calc::CLC, Calc::LK, Calc::LJ, Calc::LLJ}) {
        int found = 0;
        for (int k = 0; k < 40; ++k) {
            Sequent s;
            int nl = static_cast<int>(rng() % 2), nr = intuitionistic(c) ? 1 : 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i < nl; ++i) s.left.push_back(random_formula(rng, calc_logic(c), 4));
            for (int i = 0; i < nr; ++i) s.right.push_back(random_formula(rng, calc_logic(c), 4));
            SearchOptions opt;
            opt.max_nodes = 20000;
            SearchResult r = search_cutfree(s, c, 4, opt);
            if (!r.found()) continue;
            ++found;
            CHECK(check_proof(r.proof, c).ok);
            CHECK(cut_free(r.proof));
            CHECK(r.proof->seq() == s);
            CHECK(logical_depth(r.proof) <= 4);
            for (int b = 5; b <= 6; ++b) CHECK(search_cutfree(s, c, b, opt).found());
        }
        CHECK(found > 0);
    }
}

TEST_CASE("property: agreement with golden cut-free proofs") {
    struct G {
        const char* file;
        Calc c;
    };
    for (G g : {G{"lem_lk.pf", Calc::LK}, G{"dist_a.pf", Calc::ILCi}, G{"dist_b.pf", Calc::ILCi},
                G{"lj_modus_ponens.pf", Calc::LJ}, G{"llj_bang_uimp.pf", Calc::LLJ}}) {
        Proof p = load(g.file, g.c);
        REQUIRE(cut_free(p));
        SearchResult r = search_cutfree(p->seq(), g.c, logical_depth(p));
        CHECK_MESSAGE(r.found(), g.file);
    }
}

TEST_CASE("logical_depth ignores exchanges") {
    Proof x = id(Formula::var("X"));
    Proof t = bin(Rule::TensorR, x, id(Formula::var("Y")));
    CHECK(logical_depth(xl(t, 0)) == 1);
    CHECK(proof_depth(xl(t, 0)) == 2);
}
