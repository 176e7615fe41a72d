// Python extension. JSON documents cross the boundary as strings and are
// decoded by the package's __init__.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/io.hpp"
#include "asyncsynth/synthesis.hpp"
#include "asyncsynth/verify.hpp"

namespace py = pybind11;
using namespace asyncsynth;

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(); }

py::tuple synthesize_text(const Plant& plant, std::size_t state_limit, bool all_b, bool minimize) {
    SynthesisOptions opt;
    opt.state_limit = state_limit;
    opt.all_b = all_b;
    opt.minimize = minimize;
    SynthesisReport report;
    {
        py::gil_scoped_release release;
        report = synthesize(plant, opt);
    }
    std::string ctrl = report.controller ? serialize_controller(*report.controller) : "";
    return py::make_tuple(dump(synthesis_report_json(report, plant)), ctrl);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Controller synthesis for asynchronous automata on tree architectures";

    py::register_exception<PlantError>(m, "PlantError", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

    py::class_<Plant>(m, "Plant")
        .def_property_readonly("processes",
                               [](const Plant& p) {
                                   std::vector<std::string> out;
                                   for (const auto& q : p.processes()) out.push_back(q.name);
                                   return out;
                               })
        .def_property_readonly("actions",
                               [](const Plant& p) {
                                   std::vector<std::string> out;
                                   for (const auto& a : p.actions()) out.push_back(a.name);
                                   return out;
                               })
        .def_property_readonly("total_states", &Plant::total_states)
        .def("serialize", &serialize_plant)
        .def("__repr__", [](const Plant& p) {
            return "<Plant " + std::to_string(p.process_count()) + " processes, " +
                   std::to_string(p.action_count()) + " actions>";
        });

    m.def("parse_plant", [](const std::string& text) { return parse_plant(text); });
    m.def("validate", [](const Plant& p) {
        std::vector<std::string> out;
        for (const auto& v : validate_plant(p)) out.push_back(v.locus + ": " + v.message);
        return out;
    });
    m.def("graph_edges", [](const Plant& p) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto [a, b] : communication_graph(p).edges)
            out.emplace_back(p.process(a).name, p.process(b).name);
        return out;
    });

    m.def("gen_fig2", &gen_fig2);
    m.def("gen_l2", &gen_l2);
    m.def("gen_server_client", &gen_server_client, py::arg("k"), py::arg("client_states") = 3);
    m.def("gen_counter_plant", &gen_counter_plant, py::arg("level"), py::arg("base"));
    py::class_<CorpusLimits>(m, "CorpusLimits")
        .def(py::init<>())
        .def_readwrite("max_processes", &CorpusLimits::max_processes)
        .def_readwrite("max_states", &CorpusLimits::max_states)
        .def_readwrite("max_actions", &CorpusLimits::max_actions)
        .def_readwrite("min_processes", &CorpusLimits::min_processes);
    m.def("random_corpus", &random_corpus, py::arg("seed"), py::arg("count"),
          py::arg("limits") = CorpusLimits{});

    m.def("solve", [](const Plant& p) {
        py::gil_scoped_release release;
        return solve(p).winning;
    });
    m.def("_synthesize", &synthesize_text, py::arg("plant"), py::arg("state_limit"),
          py::arg("all_b"), py::arg("minimize"));
    m.def("_verify", [](const Plant& p, const std::string& ctrl) {
        Controller c = parse_controller(ctrl, &p);
        return dump(verdict_json(p, verify_controller(p, c)));
    });
    m.def("_reduce", [](const Plant& p, const std::string& leaf, const std::string& parent,
                        bool all_b) {
        ReductionOptions opt;
        opt.all_b = all_b;
        auto art = reduce_leaf(p, p.process_index(leaf), p.process_index(parent), opt);
        return py::make_tuple(art.reduced, dump(reduction_sidecar(art)));
    });
    m.def("is_iterated_counter", [](const std::vector<std::string>& word, std::size_t l,
                                    std::size_t n) {
        auto r = is_iterated_counter(word, l, n);
        return py::make_tuple(r.ok, r.values);
    });
}
