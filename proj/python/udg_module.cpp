#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "udg/checker.hpp"
#include "udg/expr.hpp"
#include "udg/io.hpp"
#include "udg/minimize.hpp"
#include "udg/solver.hpp"

namespace py = pybind11;
using namespace udg;

namespace {

std::shared_ptr<const SolverBackend> backend_of(const std::string& spec) { return make_backend(spec); }

KeyProperty key_of(const UnitGraph& g, int k, const std::string& companion) {
  return KeyProperty{k, parse_companion(companion, g)};
}

}  // namespace

PYBIND11_MODULE(_udg, m) {
  m.doc() = "Exact unit-distance graphs and coloring checks";

  py::register_exception<VacuousError>(m, "VacuousError", PyExc_ValueError);
  py::register_exception<BackendError>(m, "BackendError", PyExc_RuntimeError);

  py::class_<UnitGraph>(m, "UnitGraph")
      .def_static("from_text", [](const std::string& text) { return parse_graph(text); })
      .def_static("from_points",
                  [](const std::vector<std::string>& pts) {
                    std::vector<ExactPoint> v;
                    for (const auto& p : pts) v.push_back(ExactPoint::parse(p));
                    return UnitGraph::from_points(v);
                  })
      .def("__len__", &UnitGraph::size)
      .def_property_readonly("vertices",
                             [](const UnitGraph& g) {
                               std::vector<std::string> out;
                               for (const auto& p : g.vertices()) out.push_back(p.to_string());
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const UnitGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& [u, v] : g.edges()) out.emplace_back(u, v);
                               return out;
                             })
      .def("coordinates",
           [](const UnitGraph& g) {
             std::vector<std::pair<double, double>> out;
             for (const auto& p : g.vertices()) out.emplace_back(p.re.to_double(), p.im.to_double());
             return out;
           })
      .def("to_text", [](const UnitGraph& g) { return format_graph(g); })
      .def("to_json", [](const UnitGraph& g) { return graph_json(g); })
      .def("to_svg", [](const UnitGraph& g, const std::vector<int>& hl) { return render_svg(g, hl); },
           py::arg("highlight") = std::vector<int>{})
      .def("__repr__", [](const UnitGraph& g) {
        return "<UnitGraph " + std::to_string(g.size()) + " vertices, " + std::to_string(g.edges().size()) +
               " edges>";
      });

  m.def("construct", [](const std::string& expr) { return construct(expr); }, py::arg("expr"),
        "Evaluate a graph expression such as \"H^2 (+) H\".");
  m.def(
      "is_k_colorable",
      [](const UnitGraph& g, int k, const std::string& backend) { return is_k_colorable(g, k, backend_of(backend).get()); },
      py::arg("g"), py::arg("k"), py::arg("backend") = "embedded");
  m.def(
      "chromatic_number",
      [](const UnitGraph& g, int k_max, const std::string& backend) {
        return chromatic_number(g, k_max, backend_of(backend).get());
      },
      py::arg("g"), py::arg("k_max") = 7, py::arg("backend") = "embedded");
  m.def(
      "is_mono_pair",
      [](const UnitGraph& g, int u, int v, int k) { return is_mono_pair(g, u, v, k); }, py::arg("g"), py::arg("u"),
      py::arg("v"), py::arg("k"));
  m.def(
      "key_property",
      [](const UnitGraph& g, int k, const std::string& companion, const std::string& backend) {
        return key_property(g, key_of(g, k, companion), backend_of(backend).get());
      },
      py::arg("g"), py::arg("k"), py::arg("companion") = "none", py::arg("backend") = "embedded",
      "True iff the graph together with its companion is not k-colorable.");
  m.def(
      "minimize",
      [](const UnitGraph& g, int k, const std::string& companion, int max_iterations) {
        Strategy s;
        s.max_iterations = max_iterations;
        RunLog log;
        MinimizationState st = initial_state(g, group_into_orbits(g.vertices()), key_of(g, k, companion));
        st = iterate(std::move(st), s, log);
        return py::make_tuple(st.m, st.set_m, log.lines());
      },
      py::arg("g"), py::arg("k"), py::arg("companion") = "none", py::arg("max_iterations") = 10,
      "Returns (M, list of minimal graphs, JSON log lines).");
}
