#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parrot/cq_harness.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/service.hpp"

namespace py = pybind11;
using namespace parrot;

namespace {

// Raised on the Python side as parrot_advisor.ParrotError(code, message, detail).
py::object* g_error_type = nullptr;

void translate(const Error& e) {
    py::dict detail;
    for (const auto& [k, v] : e.detail()) detail[py::str(k)] = v;
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        detail["line"] = pe->line();
        detail["column"] = pe->column();
    }
    PyErr_SetObject(g_error_type->ptr(), py::make_tuple(e.code(), e.what(), detail).ptr());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native engine behind parrot_advisor";

    m.def("_set_error_type", [](py::object type) { g_error_type = new py::object(std::move(type)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (!g_error_type) throw;
            translate(e);
        }
    });

    m.def("default_data_dir", [] { return kb::default_data_dir().string(); });

    py::class_<service::Engine>(m, "Engine")
        .def(py::init([](const std::string& kb_dir, const std::string& rules) {
                 return service::load_engine(kb_dir, rules);
             }),
             py::arg("kb_dir") = "", py::arg("rules") = "")
        .def("triple_count", [](const service::Engine& e) { return e.kb.size(); })
        .def("annotate_json", &service::annotate_json, py::arg("dfd_json"))
        .def("query_json", &service::query_json, py::arg("query"))
        .def("patterns_json", &service::patterns_json)
        .def("pattern_json", &service::pattern_json, py::arg("number"))
        .def(
            "cq_stats_json",
            [](const service::Engine& e, const std::string& corpus) {
                auto path = corpus.empty() ? kb::default_data_dir() / "corpus" / "corpus.jsonl"
                                           : std::filesystem::path(corpus);
                return cq::stats_to_json(cq::run_corpus(cq::load_corpus(path), e.kb));
            },
            py::arg("corpus") = "");

    m.def(
        "lint_json",
        [](const std::string& turtle, bool include_foreign) {
            lint::LintConfig cfg;
            cfg.include_foreign = include_foreign;
            return service::lint_json(turtle, cfg);
        },
        py::arg("turtle"), py::arg("include_foreign") = false);
}
