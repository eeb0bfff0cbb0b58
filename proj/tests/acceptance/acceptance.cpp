#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "seqcalc/cutelim.hpp"
#include "seqcalc/generate.hpp"
#include "seqcalc/purity.hpp"
#include "seqcalc/search.hpp"
#include "seqcalc/translations.hpp"

using namespace seqcalc;
using seqcalc::test::load;
using seqcalc::test::S;

namespace {

// Pinned thresholds.
constexpr double kGoldenSeconds = 1.0;
constexpr double kSearchSeconds = 60.0;
constexpr int kLkFuzz = 500;
constexpr int kLkFuzzDepth = 8;
constexpr int kCutelimProofs = 500;
constexpr int kPoolSize = 120;
constexpr int kIlcExhaustBound = 12;
constexpr int kIlciFoundBound = 6;
constexpr int kLjExhaustBound = 10;
constexpr int kLkFoundBound = 8;
constexpr int kConsMaxSize = 4;
constexpr int kConsBound = 8;
constexpr uint32_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, std::string detail) {
    for (auto& ch : detail)
        if (ch == '\n') ch = ' ';
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool subformula_property(const Proof& p) {
    const Sequent& root = p->seq();
    std::function<bool(const Proof&)> walk = [&](const Proof& n) {
        for (int side = 0; side < 2; ++side)
            for (const auto& f : side ? n->seq().right : n->seq().left) {
                bool found = false;
                for (const auto& g : root.left) found = found || is_subformula(f, g);
                for (const auto& g : root.right) found = found || is_subformula(f, g);
                if (!found) return false;
            }
        for (const auto& c : n->prem)
            if (!walk(c)) return false;
        return true;
    };
    return walk(p);
}

std::vector<Proof> lk_fuzz() {
    std::mt19937 rng(kSeed);
    std::vector<Proof> v;
    for (int k = 0; k < kLkFuzz; ++k) v.push_back(random_lk_proof(rng, kLkFuzzDepth));
    return v;
}

void criterion1() {
    std::ostringstream d;
    bool ok = true;
    double worst = 0;
    auto timed = [&](const std::function<bool()>& f) {
        auto t = Clock::now();
        bool r = f();
        worst = std::max(worst, since(t));
        return r;
    };
    ok &= timed([] { return check_proof(load("lem_lk.pf", Calc::LK), Calc::LK).ok; });
    ok &= timed([] {
        CheckReport r = check_proof(load("lem_lj.pf", Calc::LJ), Calc::LJ);
        return !r.ok && r.kind == "side-condition" && r.message.find("2 formulas on the right") != std::string::npos;
    });
    ok &= timed([] {
        CheckReport r = check_proof(load("parx_tensor_ilci.pf", Calc::ILCi), Calc::ILCi);
        return r.ok && r.end == S("!(X par X) |- ?(X tensor X)");
    });
    for (const char* f : {"dist_a.pf", "dist_b.pf"})
        ok &= timed([f] {
            Proof p = load(f, Calc::ILCi);
            CheckReport r = check_proof(p, Calc::ILCi);
            return r.ok && r.end == S("!?X |- ?!X") && proof_depth(p) <= 6;
        });
    ok &= worst < kGoldenSeconds;
    d << "LEM in LK ok, LEM in LJ rejected at a two-formula right side, !(X par X) |- ?(X tensor X) in ILC_iota, "
         "both Dist derivations in ILC_iota at depth <= 6; slowest "
      << worst << " s (limit " << kGoldenSeconds << " s)";
    report(1, "golden-proof checking", ok, d.str());
}

void criterion2() {
    TractabilityReport r = is_tractable(load("parx_tensor_ilci.pf", Calc::ILCr), Calc::ILCr);
    bool rejected = !r.ok && r.clause == 2 && r.path.empty();
    struct G {
        const char* file;
        Calc c;
        Calc rho;
    };
    const std::vector<G> corpus = {
        {"lem_lk.pf", Calc::LK, Calc::LKr},
        {"dist_a.pf", Calc::ILCi, Calc::ILCr},
        {"dist_b.pf", Calc::ILCi, Calc::ILCr},
        {"llj_bang_uimp.pf", Calc::LLJ, Calc::ILCr},
        {"golden/lem_lk-inc.pf", Calc::INC, Calc::INCr},
        {"golden/lem_lk-clc.pf", Calc::CLC, Calc::CLCr},
        {"golden/lj_modus_ponens_lj-inc.pf", Calc::INC, Calc::INCr},
    };
    int checked = 0, tractable = 0, skipped = 0;
    for (const auto& g : corpus) {
        Proof p = load(g.file, g.c);
        if (g.c == Calc::LLJ) p = embed(p, Edge::LljIlc);
        bool has_whybang = false;
        std::function<void(const Proof&)> scan = [&](const Proof& n) {
            has_whybang = has_whybang || n->rule == Rule::WhyBangR;
            for (const auto& c : n->prem) scan(c);
        };
        scan(p);
        if (!cut_free(p) || has_whybang) {
            ++skipped;
            continue;
        }
        ++checked;
        if (is_tractable(p, g.rho).ok) ++tractable;
    }
    std::ostringstream d;
    d << "parx_tensor_ilci.pf rejected by ILC_rho with clause " << r.clause << " at the root cut (" << r.message
      << "); " << tractable << "/" << checked << " cut-free corpus proofs without ?!R tractable (" << skipped
      << " skipped)";
    report(2, "tractability", rejected && tractable == checked && checked > 0, d.str());
}

void criterion3(const std::vector<Proof>& fuzz) {
    std::vector<Proof> all = {load("lem_lk.pf", Calc::LK)};
    all.insert(all.end(), fuzz.begin(), fuzz.end());
    int runs = 0, bad = 0;
    std::string first;
    auto check = [&](const Proof& p, Edge e) -> Proof {
        ++runs;
        try {
            Proof q = translate_proof(p, e);
            CheckReport r = check_proof(q, edge_target(e));
            if (r.ok && r.end == translate_sequent(p->seq(), e)) return q;
            if (first.empty()) first = std::string(edge_name(e)) + " on " + print_proof(p, false) + ": " + r.text();
        } catch (const std::exception& ex) {
            if (first.empty()) first = std::string(edge_name(e)) + " on " + print_proof(p, false) + ": " + ex.what();
        }
        ++bad;
        return nullptr;
    };
    for (const auto& p : all) {
        if (Proof inc = check(p, Edge::LkInc)) check(inc, Edge::IncIlc);
        if (Proof clc = check(p, Edge::LkClc)) check(clc, Edge::ClcIlc);
        check(p, Edge::LkIlcN);
        check(p, Edge::LkIlcV);
    }
    std::ostringstream d;
    d << all.size() << " LK proofs (corpus + " << fuzz.size() << " fuzzed, depth <= " << kLkFuzzDepth
      << "), 6 edges, " << runs << " translations, " << bad << " failures";
    if (!first.empty()) d << "; first: " << first;
    report(3, "translation soundness and end-sequent law", bad == 0, d.str());
}

void criterion4(const std::vector<Proof>& fuzz) {
    std::vector<Proof> all = {load("lem_lk.pf", Calc::LK)};
    all.insert(all.end(), fuzz.begin(), fuzz.end());
    int bad = 0, with_cimpl = 0;
    std::string first;
    for (const auto& p : all) {
        CommuteResult r = commute_check(p);
        if (r.ok) continue;
        ++bad;
        bool cimpl = false;
        std::function<void(const Proof&)> scan = [&](const Proof& n) {
            cimpl = cimpl || n->rule == Rule::CImpL;
            for (const auto& c : n->prem) scan(c);
        };
        scan(p);
        if (cimpl) ++with_cimpl;
        if (first.empty()) first = print_proof(p, false) + " differs at " + path_string(r.path) + ": " + r.detail;
    }
    std::ostringstream d;
    d << bad << "/" << all.size() << " LK proofs have distinct normal forms (" << with_cimpl
      << " of them contain ==>L)";
    if (!first.empty()) d << "; first: " << first;
    report(4, "commutativity", bad == 0, d.str());
}

struct ElimStats {
    int runs = 0, ok = 0, no_case = 0, other = 0, steps = 0, mixed = 0, bad_steps = 0, bad_out = 0, not_tractable = 0;
    std::string first;
};

ElimStats eliminate_generated(Calc c, std::vector<Proof>* outputs) {
    std::mt19937 rng(kSeed + static_cast<uint32_t>(c));
    auto pool = cutfree_pool(rng, c, kPoolSize);
    ElimStats st;
    for (int attempt = 0; st.runs < kCutelimProofs && attempt < 20 * kCutelimProofs; ++attempt) {
        Proof p = compose_with_cuts(rng, pool, 1 + attempt % 4);
        if (!p || !check_proof(p, c).ok) continue;
        ++st.runs;
        Sequent end = p->seq();
        CutElimOptions opt;
        opt.on_step = [&](const StepInfo& info, const Proof& q) {
            ++st.steps;
            if (info.case_name.find("!?L") != std::string::npos || info.case_name.find("?!") != std::string::npos)
                ++st.mixed;
            if (q->seq() != end || !check_proof(q, c, {true, false}).ok) ++st.bad_steps;
        };
        try {
            Proof out = eliminate_cuts(p, c, opt);
            bool good = cut_free(out) && out->seq() == end && check_proof(out, c).ok;
            if (!good) ++st.bad_out;
            if (is_rho(c) && !is_tractable(out, c).ok) ++st.not_tractable;
            if (good) ++st.ok;
            if (outputs) outputs->push_back(out);
        } catch (const CutElimError& e) {
            if (e.kind == "no-matching-case")
                ++st.no_case;
            else
                ++st.other;
            if (st.first.empty()) st.first = std::string(e.what()) + " on " + print_proof(p, false);
        }
    }
    return st;
}

void criterion5(std::vector<Proof>& ilc_outputs) {
    auto t = Clock::now();
    ElimStats a = eliminate_generated(Calc::ILC, &ilc_outputs);
    ElimStats b = eliminate_generated(Calc::ILCr, nullptr);
    bool ok = a.runs == kCutelimProofs && b.runs == kCutelimProofs;
    for (const auto* s : {&a, &b})
        ok &= s->ok == s->runs && s->no_case == 0 && s->other == 0 && s->bad_steps == 0 && s->bad_out == 0 &&
              s->not_tractable == 0;
    std::ostringstream d;
    d << "ILC: " << a.ok << "/" << a.runs << " eliminated, " << a.steps << " steps, " << a.no_case
      << " no-matching-case, " << a.bad_steps << " bad steps; ILC_rho (tractable inputs): " << b.ok << "/" << b.runs
      << " eliminated, " << b.steps << " steps (" << b.mixed << " through !?L or the mixed cut), " << b.no_case << " no-matching-case, " << b.not_tractable
      << " non-tractable outputs; " << since(t) << " s";
    if (!a.first.empty()) d << "; first ILC error: " << a.first;
    if (!b.first.empty()) d << "; first ILC_rho error: " << b.first;
    report(5, "cut elimination", ok, d.str());
}

void criterion6() {
    auto t = Clock::now();
    SearchOptions opt;
    opt.contraction_budget = 2;
    SearchResult ilc = search_cutfree(S("!?X |- ?!X"), Calc::ILC, kIlcExhaustBound, opt);
    SearchResult ilci = search_cutfree(S("!?X |- ?!X"), Calc::ILCi, kIlciFoundBound, opt);
    SearchResult lj = search_cutfree(S("|- ((X star) or X)", Logic::IL), Calc::LJ, kLjExhaustBound, opt);
    SearchResult lk = search_cutfree(S("|- ((~ X) or X)", Logic::CL), Calc::LK, kLkFoundBound, opt);
    double secs = since(t);
    bool ok = ilc.verdict == SearchResult::Verdict::Exhausted && ilci.found() &&
              lj.verdict == SearchResult::Verdict::Exhausted && lk.found() && secs < kSearchSeconds;
    std::ostringstream d;
    d << "!?X |- ?!X: ILC " << verdict_name(ilc.verdict) << " at " << kIlcExhaustBound << " (" << ilc.nodes_explored
      << " nodes), ILC_iota " << verdict_name(ilci.verdict) << " at " << kIlciFoundBound;
    if (ilci.found()) d << " (depth " << logical_depth(ilci.proof) << ")";
    d << "; LEM: LJ " << verdict_name(lj.verdict) << " at " << kLjExhaustBound << ", LK " << verdict_name(lk.verdict)
      << " at " << kLkFoundBound;
    if (lk.found()) d << " (depth " << logical_depth(lk.proof) << ")";
    d << "; " << secs << " s (limit " << kSearchSeconds << " s)";
    report(6, "non-provability evidence", ok, d.str());
}

struct Agreement {
    int sequents = 0, disagree = 0;
    std::vector<std::string> examples;
};

// Sequents with at most two antecedent formulas, at most one succedent formula, total size <= max_size.
Agreement agreement(Logic lg, Calc a, Calc b, Logic target) {
    std::vector<Formula> fs;
    for (int s = 1; s <= kConsMaxSize; ++s) {
        auto v = enumerate_formulas(lg, s, {"X", "Y"});
        fs.insert(fs.end(), v.begin(), v.end());
    }
    Agreement ag;
    SearchOptions opt;
    auto size = [](const std::vector<Formula>& v) {
        int n = 0;
        for (const auto& f : v) n += f.size();
        return n;
    };
    auto test = [&](const Sequent& s) {
        if (size(s.left) + size(s.right) > kConsMaxSize) return;
        ++ag.sequents;
        Sequent t;
        for (const auto& f : s.left) t.left.push_back(parse_formula(to_string(f), target));
        for (const auto& f : s.right) t.right.push_back(parse_formula(to_string(f), target));
        SearchResult ra = search_cutfree(s, a, kConsBound, opt);
        SearchResult rb = search_cutfree(t, b, kConsBound, opt);
        bool limit = ra.verdict == SearchResult::Verdict::Limit || rb.verdict == SearchResult::Verdict::Limit;
        if (ra.found() != rb.found() || limit) {
            ++ag.disagree;
            if (ag.examples.size() < 3)
                ag.examples.push_back(to_string(s) + " (" + calc_name(a) + " " + verdict_name(ra.verdict) + ", " +
                                      calc_name(b) + " " + verdict_name(rb.verdict) + ")");
        }
    };
    std::vector<std::vector<Formula>> lefts = {{}};
    for (const auto& f : fs) lefts.push_back({f});
    for (const auto& f : fs)
        for (const auto& g : fs)
            if (f.size() + g.size() < kConsMaxSize) lefts.push_back({f, g});
    for (const auto& l : lefts) {
        test(Sequent{l, {}});
        for (const auto& r : fs) test(Sequent{l, {r}});
    }
    return ag;
}

void criterion7() {
    auto t = Clock::now();
    Agreement il = agreement(Logic::IL, Calc::LJ, Calc::INC, Logic::ILe);
    Agreement ill = agreement(Logic::ILL, Calc::LLJ, Calc::ILC, Logic::ILLe);
    std::ostringstream d;
    d << "IL: LJ vs INC " << il.disagree << "/" << il.sequents << " disagreements; ILL: LLJ vs ILC " << ill.disagree
      << "/" << ill.sequents << " disagreements (2 variables, size <= " << kConsMaxSize << ", bound " << kConsBound
      << "); " << since(t) << " s";
    for (const auto& e : il.examples) d << "; e.g. " << e;
    for (const auto& e : ill.examples) d << "; e.g. " << e;
    report(7, "conservativity at desk scale", il.disagree == 0 && ill.disagree == 0, d.str());
}

void criterion8(const std::vector<Proof>& elim_outputs) {
    std::mt19937 rng(kSeed + 8);
    const auto searched = cutfree_pool(rng, Calc::ILC, 200);
    int n = 0, bad = 0;
    for (const auto* set : {&searched, &elim_outputs})
        for (const auto& p : *set) {
            if (!cut_free(p) || !check_proof(p, Calc::ILC).ok) continue;
            ++n;
            if (!subformula_property(p)) ++bad;
        }
    std::ostringstream d;
    d << n << " cut-free ILC proofs (" << searched.size() << " from search, " << elim_outputs.size()
      << " from cut elimination), " << bad << " violations";
    report(8, "subformula property", bad == 0 && n > 0, d.str());
}

}  // namespace

int main() {
    std::vector<Proof> fuzz = lk_fuzz();
    std::vector<Proof> ilc_outputs;
    criterion1();
    criterion2();
    criterion3(fuzz);
    criterion4(fuzz);
    criterion5(ilc_outputs);
    criterion6();
    criterion7();
    criterion8(ilc_outputs);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
