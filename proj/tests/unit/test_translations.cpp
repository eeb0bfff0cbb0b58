#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "seqcalc/generate.hpp"
#include "seqcalc/purity.hpp"
#include "seqcalc/translations.hpp"

using namespace seqcalc;
using seqcalc::test::F;
using seqcalc::test::load;
using seqcalc::test::S;

namespace {

Proof golden(const std::string& name, Calc c) { return load("golden/" + name, c); }

}  // namespace

TEST_CASE("translate_formula examples") {
    CHECK(translate_formula(Formula::tt(), Edge::LkInc) == F("?top"));
    for (Edge e : all_edges()) CHECK(translate_formula(Formula::var("X"), e) == Formula::var("X"));
    CHECK(translate_formula(F("(X ==> Y)", Logic::CL), Edge::LkIlcN) == F("(!X -o ?Y)"));
    CHECK(translate_formula(Formula::ff(), Edge::LkClc) == F("!bot", Logic::CLLm));
    CHECK(translate_formula(Formula::tt(), Edge::LkClc) == Formula::tt());
    CHECK(translate_formula(F("!X", Logic::CLLm), Edge::ClcIlc) == F("!X"));
    CHECK(translate_formula(F("?X", Logic::ILe), Edge::IncIlc) == F("?X"));
    CHECK_THROWS_AS(translate_formula(F("!X"), Edge::LkInc), LanguageError);
}

TEST_CASE("composite edges compose") {
    std::mt19937 rng(41);
    for (int k = 0; k < 300; ++k) {
        Formula f = random_formula(rng, Logic::CL, 8);
        CHECK(translate_formula(f, Edge::LkIlcN) == translate_formula(translate_formula(f, Edge::LkInc), Edge::IncIlc));
        CHECK(translate_formula(f, Edge::LkIlcV) == translate_formula(translate_formula(f, Edge::LkClc), Edge::ClcIlc));
        CHECK(translate_formula(f, Edge::LkIlcN) == translate_formula(f, Edge::LkIlcV));
    }
}

TEST_CASE("translate_proof of LEM") {
    Proof lem = load("lem_lk.pf", Calc::LK);
    Proof inc = translate_proof(lem, Edge::LkInc);
    CheckReport r = check_proof(inc, Calc::INC);
    CHECK(r.ok);
    CHECK(r.end == S("|- ?((X => ?ff) or X)", Logic::ILe));
    CHECK(r.end.right[0] == Formula::why(translate_formula(lem->seq().right[0], Edge::LkInc)));
}

TEST_CASE("translation goldens") {
    Proof lem = load("lem_lk.pf", Calc::LK);
    CHECK(structurally_equal(translate_proof(lem, Edge::LkInc), golden("lem_lk-inc.pf", Calc::INC)));
    CHECK(structurally_equal(translate_proof(lem, Edge::LkClc), golden("lem_lk-clc.pf", Calc::CLC)));
    CHECK(structurally_equal(translate_proof(lem, Edge::LkIlcN), load("lem_ilc_via_inc.pf", Calc::ILCi)));
    CHECK(structurally_equal(translate_proof(lem, Edge::LkIlcV), golden("lem_lk-ilc-v.pf", Calc::ILCi)));
    CHECK(structurally_equal(translate_proof(golden("lem_lk-inc.pf", Calc::INC), Edge::IncIlc),
                             golden("lem_inc-ilc.pf", Calc::ILCi)));
    CHECK(structurally_equal(translate_proof(golden("lem_lk-clc.pf", Calc::CLC), Edge::ClcIlc),
                             golden("lem_clc-ilc.pf", Calc::ILCi)));
    CHECK(structurally_equal(embed(load("lj_modus_ponens.pf", Calc::LJ), Edge::LjInc),
                             golden("lj_modus_ponens_lj-inc.pf", Calc::INC)));
    CHECK(structurally_equal(embed(load("llj_bang_uimp.pf", Calc::LLJ), Edge::LljIlc),
                             golden("llj_bang_uimp_llj-ilc.pf", Calc::ILC)));
}

TEST_CASE("translate_proof of an axiom") {
    Proof x = id(Formula::var("X"));
    for (Edge e : {Edge::LkInc, Edge::LkClc, Edge::LkIlcN, Edge::LkIlcV}) {
        Proof q = translate_proof(x, e);
        CheckReport r = check_proof(q, edge_target(e));
        CHECK(r.ok);
        CHECK(r.end == translate_sequent(S("X |- X", Logic::CL), e));
    }
    CHECK(translate_sequent(S("X |- X", Logic::CL), Edge::LkInc) == S("X |- ?X", Logic::ILe));
    CHECK(translate_sequent(S("X |- X", Logic::CL), Edge::LkClc) == S("!X |- X", Logic::CLLm));
    CHECK(translate_sequent(S("X |- X", Logic::CL), Edge::LkIlcN) == S("!X |- ?X"));
}

TEST_CASE("embedding examples") {
    Proof r = un(Rule::UImpR, id(Formula::var("X")));
    CHECK(check_proof(r, Calc::LLJ).ok);
    Proof e = embed(r, Edge::LljIlc);
    CHECK(e->rule == Rule::ParR);
    CHECK(e->prem[0]->rule == Rule::NegR);
    CHECK(e->prem[0]->prem[0]->rule == Rule::Id);
    CHECK(embed(id(Formula::var("X")), Edge::LjInc)->rule == Rule::Id);
    CHECK_THROWS_AS(embed(id(Formula::var("X")), Edge::LkInc), TranslationError);
}

TEST_CASE("translate_proof rejects unchecked sources") {
    CHECK_THROWS_AS(translate_proof(load("lem_lj.pf", Calc::LJ), Edge::LjInc), TranslationError);
}

TEST_CASE("property: soundness and end-sequent law on fuzzed LK proofs") {
    std::mt19937 rng(42);
    for (int k = 0; k < 150; ++k) {
        Proof p = random_lk_proof(rng, 6);
        Sequent s = p->seq();
        for (Edge e : {Edge::LkInc, Edge::LkClc, Edge::LkIlcN, Edge::LkIlcV}) {
            Proof q = translate_proof(p, e);
            CheckReport r = check_proof(q, edge_target(e));
            CHECK_MESSAGE(r.ok, print_proof(p, false), " along ", edge_name(e), ": ", r.text());
            CHECK(r.end == translate_sequent(s, e));
        }
    }
}

TEST_CASE("property: tractable inputs give tractable outputs") {
    std::mt19937 rng(43);
    int seen = 0;
    for (int k = 0; k < 150; ++k) {
        Proof p = random_lk_proof(rng, 6);
        if (!is_tractable(p, Calc::LKr).ok) continue;
        ++seen;
        Proof inc = translate_proof(p, Edge::LkInc);
        CHECK(is_tractable(inc, Calc::INCr).ok);
        Proof clc = translate_proof(p, Edge::LkClc);
        CHECK(is_tractable(clc, Calc::CLCr).ok);
    }
    CHECK(seen > 20);
}

TEST_CASE("permutation_normalize") {
    Proof x = id(Formula::var("X"));
    // !D and ?D on disjoint occurrences, in both orders
    Proof a = un(Rule::WhyD, un(Rule::BangD, x));
    Proof b = un(Rule::BangD, un(Rule::WhyD, x));
    CHECK(a->seq() == b->seq());
    CHECK(structurally_equal(permutation_normalize(a, Calc::ILC), permutation_normalize(b, Calc::ILC)));

    std::mt19937 rng(44);
    for (int k = 0; k < 60; ++k) {
        Proof p = translate_proof(random_lk_proof(rng, 5), k % 2 ? Edge::LkIlcN : Edge::LkIlcV);
        Proof n = permutation_normalize(p, Calc::ILCi);
        CheckReport r = check_proof(n, Calc::ILCi);
        CHECK(r.ok);
        CHECK(r.end == p->seq());
        CHECK(structurally_equal(permutation_normalize(n, Calc::ILCi), n));
    }
}

TEST_CASE("commute_check examples") {
    CHECK(commute_check(id(Formula::var("X"))).ok);
    Proof lem = load("lem_lk.pf", Calc::LK);
    CommuteResult r = commute_check(lem);
    CHECK(r.ok);
    CHECK(structurally_equal(r.via_inc, r.via_clc));
    CHECK(structurally_equal(permutation_normalize(translate_proof(lem, Edge::LkIlcN), Calc::ILCi),
                             permutation_normalize(translate_proof(lem, Edge::LkIlcV), Calc::ILCi)));
}
