#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqcalc/calculi.hpp"
#include "seqcalc/cutelim.hpp"
#include "seqcalc/formula.hpp"
#include "seqcalc/proof.hpp"
#include "seqcalc/purity.hpp"
#include "seqcalc/search.hpp"
#include "seqcalc/translations.hpp"

namespace py = pybind11;
using namespace seqcalc;

namespace {

Calc calc_arg(const std::string& s) {
    auto c = parse_calc(s);
    if (!c) throw py::value_error("unknown calculus: " + s);
    return *c;
}

Logic logic_arg(const std::string& s) {
    Logic l;
    if (!parse_logic(s, l)) throw py::value_error("unknown logic: " + s);
    return l;
}

Edge edge_arg(const std::string& s) {
    auto e = parse_edge(s);
    if (!e) throw py::value_error("unknown edge: " + s);
    return *e;
}

struct PyProof {
    Proof p;
};

std::optional<PyProof> wrap(const Proof& p) {
    if (!p) return std::nullopt;
    return PyProof{p};
}

PurityReading reading_arg(bool constituent) {
    return constituent ? PurityReading::Constituent : PurityReading::Global;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ProofParseError>(m, "ProofParseError", PyExc_ValueError);
    py::register_exception<LanguageError>(m, "LanguageError", PyExc_ValueError);
    py::register_exception<TranslationError>(m, "TranslationError");
    py::register_exception<CutElimError>(m, "CutElimError");

    py::class_<Formula>(m, "Formula")
        .def("__str__", [](const Formula& f) { return to_string(f); })
        .def("__repr__", [](const Formula& f) { return "Formula('" + to_string(f) + "')"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__hash__", [](const Formula& f) { return FormulaHash()(f); })
        .def("rank", [](const Formula& f) { return rank(f); })
        .def("dual", [](const Formula& f) { return linear_dual(f); })
        .def("in_language", [](const Formula& f, const std::string& l) { return in_language(f, logic_arg(l)); });

    py::class_<Sequent>(m, "Sequent")
        .def_readonly("left", &Sequent::left)
        .def_readonly("right", &Sequent::right)
        .def("__str__", [](const Sequent& s) { return to_string(s); })
        .def("__repr__", [](const Sequent& s) { return "Sequent('" + to_string(s) + "')"; })
        .def("__eq__", [](const Sequent& a, const Sequent& b) { return a == b; });

    py::class_<PyProof>(m, "Proof")
        .def_property_readonly("rule", [](const PyProof& h) { return std::string(rule_name(h.p->rule)); })
        .def_property_readonly("premises",
                               [](const PyProof& h) {
                                   std::vector<PyProof> out;
                                   for (const auto& c : h.p->prem) out.push_back({c});
                                   return out;
                               })
        .def_property_readonly("sequent", [](const PyProof& h) { return h.p->seq(); })
        .def("__str__", [](const PyProof& h) { return print_proof(h.p); })
        .def("size", [](const PyProof& h) { return proof_size(h.p); })
        .def("depth", [](const PyProof& h) { return proof_depth(h.p); })
        .def("cut_free", [](const PyProof& h) { return cut_free(h.p); })
        .def("structurally_equal", [](const PyProof& a, const PyProof& b) { return structurally_equal(a.p, b.p); });

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("ok", &CheckReport::ok)
        .def_readonly("end", &CheckReport::end)
        .def_readonly("path", &CheckReport::path)
        .def_readonly("kind", &CheckReport::kind)
        .def_readonly("message", &CheckReport::message)
        .def("__bool__", [](const CheckReport& r) { return r.ok; })
        .def("__str__", &CheckReport::text);

    py::class_<TractabilityReport>(m, "TractabilityReport")
        .def_readonly("ok", &TractabilityReport::ok)
        .def_readonly("path", &TractabilityReport::path)
        .def_readonly("clause", &TractabilityReport::clause)
        .def_readonly("message", &TractabilityReport::message)
        .def("__bool__", [](const TractabilityReport& r) { return r.ok; })
        .def("__str__", &TractabilityReport::text);

    py::class_<CommuteResult>(m, "CommuteResult")
        .def_readonly("ok", &CommuteResult::ok)
        .def_readonly("path", &CommuteResult::path)
        .def_readonly("detail", &CommuteResult::detail)
        .def_property_readonly("via_inc", [](const CommuteResult& r) { return wrap(r.via_inc); })
        .def_property_readonly("via_clc", [](const CommuteResult& r) { return wrap(r.via_clc); })
        .def("__bool__", [](const CommuteResult& r) { return r.ok; });

    py::class_<SearchResult>(m, "SearchResult")
        .def_property_readonly("verdict", [](const SearchResult& r) { return std::string(verdict_name(r.verdict)); })
        .def_property_readonly("proof", [](const SearchResult& r) { return wrap(r.proof); })
        .def_readonly("bound", &SearchResult::bound)
        .def_readonly("nodes_explored", &SearchResult::nodes_explored)
        .def("found", &SearchResult::found);

    m.def("parse_formula", [](const std::string& t, const std::string& l) { return parse_formula(t, logic_arg(l)); },
          py::arg("text"), py::arg("logic") = "ill-e");
    m.def("parse_sequent", [](const std::string& t, const std::string& l) { return parse_sequent(t, logic_arg(l)); },
          py::arg("text"), py::arg("logic") = "ill-e");
    m.def("parse_proof", [](const std::string& t, const std::string& l) { return PyProof{parse_proof(t, logic_arg(l))}; },
          py::arg("text"), py::arg("logic") = "ill-e");
    m.def("calc_logic", [](const std::string& c) { return std::string(logic_name(calc_logic(calc_arg(c)))); });

    m.def("check", [](const PyProof& h, const std::string& c) { return check_proof(h.p, calc_arg(c)); },
          py::arg("proof"), py::arg("calculus"));
    m.def("tractable",
          [](const PyProof& h, const std::string& c, bool cr) { return is_tractable(h.p, calc_arg(c), reading_arg(cr)); },
          py::arg("proof"), py::arg("calculus"), py::arg("constituent_reading") = false);
    m.def("translate", [](const PyProof& h, const std::string& e) { return PyProof{translate_proof(h.p, edge_arg(e))}; },
          py::arg("proof"), py::arg("edge"));
    m.def("translate_formula", [](const Formula& f, const std::string& e) { return translate_formula(f, edge_arg(e)); },
          py::arg("formula"), py::arg("edge"));
    m.def("embed", [](const PyProof& h, const std::string& e) { return PyProof{embed(h.p, edge_arg(e))}; }, py::arg("proof"),
          py::arg("edge"));
    m.def("commute", [](const PyProof& h) { return commute_check(h.p); }, py::arg("proof"));

    m.def(
        "cutelim",
        [](const PyProof& h, const std::string& c, long fuel, bool cr) {
            CutElimOptions opt;
            opt.fuel = fuel;
            opt.reading = reading_arg(cr);
            std::vector<std::string> trace;
            opt.on_step = [&](const StepInfo& s, const Proof&) { trace.push_back(format_step(s)); };
            Proof out = eliminate_cuts(h.p, calc_arg(c), opt);
            return py::make_tuple(PyProof{out}, trace);
        },
        py::arg("proof"), py::arg("calculus"), py::arg("fuel") = 1000000, py::arg("constituent_reading") = false);

    m.def(
        "search",
        [](const Sequent& s, const std::string& c, int depth, int budget, long max_nodes) {
            SearchOptions opt;
            opt.contraction_budget = budget;
            opt.max_nodes = max_nodes;
            py::gil_scoped_release release;
            return search_cutfree(s, calc_arg(c), depth, opt);
        },
        py::arg("goal"), py::arg("calculus"), py::arg("depth") = 8, py::arg("contraction_budget") = 2,
        py::arg("max_nodes") = 50000000);
}
