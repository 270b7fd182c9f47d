#include "bigmcg/errors.hpp"
#include "bigmcg/replay.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace bigmcg;

namespace {

std::vector<std::int64_t> coeffs(const HomologyClass& c) { return {c.coeffs().begin(), c.coeffs().end()}; }

// Rows of the matrix; entries of undefined columns are None.
std::vector<std::vector<std::optional<std::int64_t>>> rows(const ActionMatrix& m) {
    std::vector<std::vector<std::optional<std::int64_t>>> out(static_cast<std::size_t>(m.dimension()));
    for (int r = 0; r < m.dimension(); ++r)
        for (int c = 0; c < m.dimension(); ++c)
            out[r].push_back(m.defined(c) ? std::optional<std::int64_t>(m.at(r, c)) : std::nullopt);
    return out;
}

}  // namespace

PYBIND11_MODULE(_bigmcg, m) {
    m.doc() = "Homology-level replay of involution-generation proofs for mapping class groups";

    static py::exception<Error> base(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(base)(std::string(e.kind()) + ": " + e.what());
            exc.attr("kind") = e.kind();
            PyErr_SetObject(base.ptr(), exc.ptr());
        }
    });

    py::class_<CurveAtlas>(m, "Atlas")
        .def(py::init([](int ends, int depth) { return default_atlas(SurfaceConfig{ends, depth}); }),
             py::arg("ends"), py::arg("depth") = SurfaceConfig::kDefaultDepth)
        .def_static("from_json", [](const std::string& text) { return build_atlas(nlohmann::json::parse(text)); })
        .def_property_readonly("ends", [](const CurveAtlas& a) { return a.config().ends; })
        .def_property_readonly("depth", [](const CurveAtlas& a) { return a.config().depth; })
        .def("curves", [](const CurveAtlas& a) {
            std::vector<std::string> names;
            for (const auto& entry : a.curves()) names.push_back(entry.first.str());
            return names;
        })
        .def("homology", [](const CurveAtlas& a, const std::string& c) { return coeffs(a.homology(CurveName::parse(c))); })
        .def("homology_str", [](const CurveAtlas& a, const std::string& c) { return a.homology(CurveName::parse(c)).str(); })
        .def("intersection", [](const CurveAtlas& a, const std::string& x, const std::string& y) {
            return a.intersection(CurveName::parse(x), CurveName::parse(y));
        })
        .def("to_json", [](const CurveAtlas& a) { return a.to_json().dump(); });

    py::class_<HomologyEngine>(m, "Engine")
        .def(py::init<CurveAtlas>(), py::arg("atlas"))
        .def_property_readonly("atlas", &HomologyEngine::atlas)
        .def("evaluate", [](const HomologyEngine& e, const std::string& w, const std::string& c) {
            return e.evaluate(parse_word(w), CurveName::parse(c)).str();
        }, py::arg("word"), py::arg("curve"))
        .def("evaluate_coeffs", [](const HomologyEngine& e, const std::string& w, const std::vector<std::int64_t>& x) {
            return coeffs(e.evaluate(parse_word(w), HomologyClass(e.config(), x)));
        }, py::arg("word"), py::arg("coeffs"))
        .def("matrix", [](const HomologyEngine& e, const std::string& w) { return rows(e.word_matrix(parse_word(w))); },
             py::arg("word"))
        .def("preserves_form", [](const HomologyEngine& e, const std::string& w) {
            return e.word_matrix(parse_word(w)).preserves_form();
        });

    m.def("parse_word", [](const std::string& w) { return parse_word(w).str(); }, py::arg("text"),
          "Canonical text of a word.");
    m.def("invert", [](const std::string& w) { return invert(parse_word(w)).str(); });
    m.def("free_reduce", [](const std::string& w) { return free_reduce(parse_word(w)).str(); });
    m.def("perm", [](const std::string& w, int n) { return perm_of(parse_word(w), n).images(); }, py::arg("word"),
          py::arg("ends"));
    m.def("perm_str", [](const std::string& w, int n) { return perm_of(parse_word(w), n).str(); }, py::arg("word"),
          py::arg("ends"));
    m.def("closure_order", [](const std::vector<std::string>& gens, int n) {
        std::vector<EndPermutation> perms;
        for (const auto& g : gens) perms.push_back(perm_of(parse_word(g), n));
        return SubgroupClosure(n, perms).order();
    }, py::arg("generators"), py::arg("ends"));

    m.def("script_ids", [] { return ScriptLibrary::builtin().ids(); });
    m.def("run_script_json", [](const std::string& id, const CurveAtlas& atlas) {
        VerificationReport r;
        {
            py::gil_scoped_release release;
            r = run_script(id, atlas);
        }
        return r.to_json().dump();
    }, py::arg("id"), py::arg("atlas"));
}
