#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqcalc/cutelim.hpp"
#include "seqcalc/purity.hpp"
#include "seqcalc/search.hpp"
#include "seqcalc/translations.hpp"

namespace seqcalc::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& src) {
    if (src == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (std::filesystem::is_regular_file(src)) {
        std::ifstream in(src, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    auto first = src.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && src[first] == '(') return src;
    throw UsageError("cannot read proof file '" + src + "'");
}

Calc calc_arg(const std::string& s) {
    auto c = parse_calc(s);
    if (!c) throw UsageError("unknown calculus '" + s + "'");
    return *c;
}

Logic logic_arg(const std::string& s) {
    Logic l;
    if (!parse_logic(s, l)) throw UsageError("unknown logic '" + s + "'");
    return l;
}

json path_json(const std::vector<int>& p) { return json(p); }

json base(const std::string& cmd) { return json{{"schema", 1}, {"command", cmd}}; }

void emit(std::ostream& out, bool as_json, const json& j, const std::string& text) {
    if (as_json)
        out << j.dump(2) << "\n";
    else
        out << text;
}

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    bool json = false;
};

int cmd_check(Ctx& x, const std::string& file, const std::string& calc) {
    Calc c = calc_arg(calc);
    Proof p = parse_proof(read_input(file), calc_logic(c));
    CheckReport r = check_proof(p, c);
    json j = base("check");
    j["calculus"] = calc_name(c);
    j["ok"] = r.ok;
    std::ostringstream t;
    if (r.ok) {
        j["end_sequent"] = to_string(r.end);
        j["depth"] = proof_depth(p);
        j["cut_free"] = cut_free(p);
        t << "ok in " << calc_name(c) << ": " << r.end << "\n";
        t << "depth " << proof_depth(p) << ", " << proof_size(p) << " nodes" << (cut_free(p) ? ", cut-free" : "") << "\n";
    } else {
        j["kind"] = r.kind;
        j["path"] = path_json(r.path);
        j["message"] = r.message;
        j["rule"] = r.schema;
        t << r.text() << "\n";
    }
    emit(x.out, x.json, j, t.str());
    return r.ok ? 0 : 1;
}

int cmd_translate(Ctx& x, const std::string& file, const std::string& edge, const std::string& output) {
    auto e = parse_edge(edge);
    if (!e) throw UsageError("unknown edge '" + edge + "'");
    Proof p = parse_proof(read_input(file), calc_logic(edge_source(*e)));
    CheckReport src = check_proof(p, edge_source(*e));
    json j = base("translate");
    j["edge"] = edge_name(*e);
    if (!src.ok) {
        j["ok"] = false;
        j["message"] = "source proof does not check in " + std::string(calc_name(edge_source(*e))) + ": " + src.text();
        emit(x.out, x.json, j, j["message"].get<std::string>() + "\n");
        return 1;
    }
    bool embedding = *e == Edge::LljIlc || *e == Edge::LjInc;
    Proof q = embedding ? embed(p, *e) : translate_proof(p, *e);
    CheckReport tgt = check_proof(q, edge_target(*e));
    Sequent image = translate_sequent(src.end, *e);
    bool law = tgt.ok && tgt.end == image;
    j["ok"] = law;
    j["target"] = calc_name(edge_target(*e));
    j["end_sequent"] = tgt.ok ? to_string(tgt.end) : "";
    j["expected_end_sequent"] = to_string(image);
    j["proof"] = print_proof(q, false);
    std::ostringstream t;
    t << "; " << edge_name(*e) << ": " << src.end << "  ==>  " << (tgt.ok ? to_string(tgt.end) : tgt.text()) << "\n";
    if (!output.empty()) {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + output + "'");
        f << print_proof(q) << "\n";
    } else {
        t << print_proof(q) << "\n";
    }
    if (!law) t << "translation does not check in " << calc_name(edge_target(*e)) << " with the image end sequent\n";
    emit(x.out, x.json, j, t.str());
    return law ? 0 : 1;
}

int cmd_cutelim(Ctx& x, const std::string& file, const std::string& calc, bool trace, long fuel, bool constituent) {
    Calc c = calc_arg(calc);
    Proof p = parse_proof(read_input(file), calc_logic(c));
    CutElimOptions opt;
    opt.fuel = fuel;
    opt.reading = constituent ? PurityReading::Constituent : PurityReading::Global;
    json steps = json::array();
    std::ostringstream t;
    if (trace)
        opt.on_step = [&](const StepInfo& s, const Proof&) {
            steps.push_back({{"case", s.case_name}, {"path", s.path}, {"rank", s.rank}, {"depth", s.depth}});
            if (!x.json) x.out << format_step(s) << "\n";
        };
    json j = base("cutelim");
    j["calculus"] = calc_name(c);
    try {
        Proof q = eliminate_cuts(p, c, opt);
        j["ok"] = true;
        j["end_sequent"] = to_string(q->seq());
        j["proof"] = print_proof(q, false);
        if (trace) j["trace"] = steps;
        t << "; cut-free proof of " << q->seq() << "\n" << print_proof(q) << "\n";
        emit(x.out, x.json, j, t.str());
        return 0;
    } catch (const CutElimError& ex) {
        j["ok"] = false;
        j["error"] = ex.kind;
        j["message"] = ex.what();
        j["path"] = path_json(ex.path);
        if (trace) j["trace"] = steps;
        t << "error " << ex.what() << "\n";
        emit(x.out, x.json, j, t.str());
        if (ex.kind == "step-limit-exceeded") return 3;
        if (ex.kind == "calculus-unsupported") return 2;
        return 1;
    }
}

int cmd_tractable(Ctx& x, const std::string& file, const std::string& calc, bool constituent) {
    Calc c = calc_arg(calc);
    Proof p = parse_proof(read_input(file), calc_logic(c));
    CheckReport r = check_proof(p, calc_parent(c));
    json j = base("tractable");
    j["calculus"] = calc_name(c);
    if (!r.ok) {
        j["tractable"] = false;
        j["message"] = "proof does not check in " + std::string(calc_name(calc_parent(c))) + ": " + r.text();
        emit(x.out, x.json, j, j["message"].get<std::string>() + "\n");
        return 1;
    }
    TractabilityReport t = is_tractable(p, c, constituent ? PurityReading::Constituent : PurityReading::Global);
    j["tractable"] = t.ok;
    j["reading"] = constituent ? "constituent" : "global";
    if (!t.ok) {
        j["path"] = path_json(t.path);
        j["clause"] = t.clause;
        j["message"] = t.message;
    }
    emit(x.out, x.json, j, t.text() + "\n");
    return t.ok ? 0 : 1;
}

int cmd_search(Ctx& x, const std::string& goal, const std::string& calc, int depth, int budget, long max_nodes) {
    Calc c = calc_arg(calc);
    Sequent s = parse_sequent(goal, calc_logic(c));
    SearchOptions opt;
    opt.contraction_budget = budget;
    opt.max_nodes = max_nodes;
    auto t0 = std::chrono::steady_clock::now();
    SearchResult r = search_cutfree(s, c, depth, opt);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json j = base("search");
    j["calculus"] = calc_name(c);
    j["goal"] = to_string(s);
    j["verdict"] = verdict_name(r.verdict);
    j["bound"] = r.bound;
    j["nodes_explored"] = r.nodes_explored;
    std::ostringstream t;
    t << verdict_name(r.verdict) << " " << s << " in " << calc_name(c) << " (bound " << r.bound << ", "
      << r.nodes_explored << " nodes, " << static_cast<long>(ms) << " ms)\n";
    if (r.found()) {
        j["proof"] = print_proof(r.proof, false);
        j["depth"] = proof_depth(r.proof);
        j["logical_depth"] = logical_depth(r.proof);
        t << print_proof(r.proof) << "\n";
    }
    emit(x.out, x.json, j, t.str());
    switch (r.verdict) {
        case SearchResult::Verdict::Found: return 0;
        case SearchResult::Verdict::Exhausted: return 1;
        case SearchResult::Verdict::Limit: return 3;
    }
    return 3;
}

int cmd_commute(Ctx& x, const std::string& file) {
    Proof p = parse_proof(read_input(file), calc_logic(Calc::LK));
    CheckReport r = check_proof(p, Calc::LK);
    json j = base("commute");
    if (!r.ok) {
        j["ok"] = false;
        j["message"] = "proof does not check in LK: " + r.text();
        emit(x.out, x.json, j, j["message"].get<std::string>() + "\n");
        return 1;
    }
    CommuteResult c = commute_check(p);
    j["ok"] = c.ok;
    std::ostringstream t;
    if (c.ok) {
        t << "routes coincide for " << r.end << "\n";
    } else {
        j["path"] = path_json(c.path);
        j["detail"] = c.detail;
        t << "routes differ at " << path_string(c.path) << ": " << c.detail << "\n";
    }
    emit(x.out, x.json, j, t.str());
    return c.ok ? 0 : 1;
}

int cmd_rank(Ctx& x, const std::string& text, const std::string& logic) {
    Formula f = parse_formula(text, logic_arg(logic));
    json j = base("rank");
    j["formula"] = to_string(f);
    j["rank"] = rank(f);
    emit(x.out, x.json, j, std::to_string(rank(f)) + "\n");
    return 0;
}

int cmd_dual(Ctx& x, const std::string& text) {
    Formula f = parse_formula(text, Logic::CLL);
    Formula d = linear_dual(f);
    json j = base("dual");
    j["formula"] = to_string(f);
    j["dual"] = to_string(d);
    emit(x.out, x.json, j, to_string(d) + "\n");
    return 0;
}

int cmd_parse(Ctx& x, const std::string& text, const std::string& logic, const std::string& calc, bool sequent) {
    json j = base("parse");
    std::string printed;
    if (!calc.empty()) {
        Calc c = calc_arg(calc);
        Proof p = parse_proof(read_input(text), calc_logic(c));
        printed = print_proof(p);
        j["kind"] = "proof";
        j["text"] = print_proof(p, false);
    } else if (sequent) {
        Sequent s = parse_sequent(text, logic_arg(logic));
        printed = to_string(s);
        j["kind"] = "sequent";
        j["text"] = printed;
    } else {
        Formula f = parse_formula(text, logic_arg(logic));
        printed = to_string(f);
        j["kind"] = "formula";
        j["text"] = printed;
        j["size"] = f.size();
    }
    emit(x.out, x.json, j, printed + "\n");
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checker, translator and cut-eliminator for a family of sequent calculi", "seqcalc"};
    app.require_subcommand(1);
    bool as_json = false;

    std::string file, calc, edge, output, text, logic = "ILLe";
    bool trace = false, constituent = false, sequent = false;
    long fuel = 1000000, max_nodes = 50000000;
    int depth = 8, budget = 2;

    auto* check = app.add_subcommand("check", "Check a proof file in a calculus");
    check->add_option("file", file, "Proof file, '-' for stdin")->required();
    check->add_option("-c,--calculus", calc, "Calculus id")->required();

    auto* translate = app.add_subcommand("translate", "Translate a proof along an edge");
    translate->add_option("file", file, "Proof file")->required();
    translate->add_option("-e,--edge", edge, "lk-inc, inc-ilc, lk-clc, clc-ilc, lk-ilc-n, lk-ilc-v, llj-ilc, lj-inc")
        ->required();
    translate->add_option("-o,--output", output, "Write the translated proof to this file");

    auto* cutelim = app.add_subcommand("cutelim", "Eliminate cuts");
    cutelim->add_option("file", file, "Proof file")->required();
    cutelim->add_option("-c,--calculus", calc, "Calculus id")->required();
    cutelim->add_flag("--trace", trace, "Print one line per reduction step");
    cutelim->add_option("--fuel", fuel, "Step limit")->capture_default_str();
    cutelim->add_flag("--constituent-reading", constituent, "Count only constituent occurrences for purity");

    auto* tractable = app.add_subcommand("tractable", "Decide tractability in a rho-calculus");
    tractable->add_option("file", file, "Proof file")->required();
    tractable->add_option("-c,--calculus", calc, "Calculus id")->required();
    tractable->add_flag("--constituent-reading", constituent, "Count only constituent occurrences for purity");

    auto* search = app.add_subcommand("search", "Bounded cut-free proof search");
    search->add_option("sequent", text, "Goal sequent, e.g. \"!?X |- ?!X\"")->required();
    search->add_option("-c,--calculus", calc, "Calculus id")->required();
    search->add_option("-d,--depth", depth, "Depth bound (exchanges not counted)")->capture_default_str();
    search->add_option("--contraction-budget", budget, "Extra copies a contraction may produce")
        ->capture_default_str();
    search->add_option("--max-nodes", max_nodes, "Expansion limit")->capture_default_str();

    auto* commute = app.add_subcommand("commute", "Compare the two translations of an LK proof into ILC");
    commute->add_option("file", file, "LK proof file")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Rank of a formula");
    rank_cmd->add_option("formula", text)->required();
    rank_cmd->add_option("-l,--logic", logic, "Logic id")->capture_default_str();

    auto* dual = app.add_subcommand("dual", "Linear negation of a CLL formula");
    dual->add_option("formula", text)->required();

    auto* parse = app.add_subcommand("parse", "Parse and print a formula, sequent or proof");
    parse->add_option("text", text, "Formula, sequent, or proof file with --calculus")->required();
    parse->add_option("-l,--logic", logic, "Logic id")->capture_default_str();
    parse->add_option("-c,--calculus", calc, "Parse a proof file in this calculus");
    parse->add_flag("-s,--sequent", sequent, "Parse a sequent");

    for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", as_json, "Print a machine-readable report (schema 1)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    Ctx x{out, err, as_json};
    try {
        if (*check) return cmd_check(x, file, calc);
        if (*translate) return cmd_translate(x, file, edge, output);
        if (*cutelim) return cmd_cutelim(x, file, calc, trace, fuel, constituent);
        if (*tractable) return cmd_tractable(x, file, calc, constituent);
        if (*search) return cmd_search(x, text, calc, depth, budget, max_nodes);
        if (*commute) return cmd_commute(x, file);
        if (*rank_cmd) return cmd_rank(x, text, logic);
        if (*dual) return cmd_dual(x, text);
        if (*parse) return cmd_parse(x, text, logic, calc, sequent);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ProofParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const LanguageError& e) {
        err << "language error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace seqcalc::cli
