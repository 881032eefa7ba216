// Python module: the command cores of hdb/io.hpp on canonical JSON strings.
// Workspace, report and export documents keep the same schema as the command
// line tool, so results are byte-identical across the two front ends.
#include <pybind11/pybind11.h>

#include "hdb/io.hpp"

namespace py = pybind11;

namespace {

hdb::Workspace load(const std::string& text) { return hdb::parse_workspace(text); }

std::string run_validate(const std::string& ws) {
  return hdb::serialize_report(hdb::cmd_validate(load(ws)));
}

py::tuple run_brackets(const std::string& ws, int max_arity) {
  std::string tables;
  std::string report = hdb::serialize_report(hdb::cmd_brackets(load(ws), max_arity, &tables));
  return py::make_tuple(report, tables);
}

std::string run_jacobi(const std::string& ws, int max_n) {
  return hdb::serialize_report(hdb::cmd_jacobi(load(ws), max_n));
}

std::string run_cocylinder(const std::string& ws, int max_n, bool brute_force) {
  return hdb::serialize_report(hdb::cmd_cocylinder(load(ws), max_n, brute_force));
}

std::string run_homology(const std::string& ws) {
  return hdb::serialize_report(hdb::cmd_homology(load(ws)));
}

py::tuple run_vfield(const std::string& ws, int cap) {
  std::string fields;
  std::string report = hdb::serialize_report(hdb::cmd_vfield(load(ws), cap, &fields));
  return py::make_tuple(report, fields);
}

}  // namespace

PYBIND11_MODULE(hdb, m) {
  m.doc() = "Exact derived brackets on finite-dimensional Lie superalgebras. "
            "All functions exchange canonical JSON text in the workspace, report "
            "and export schemas of the hdb command line tool.";
  m.attr("__version__") = "1.0.0";

  m.def("canonicalize", [](const std::string& ws) { return hdb::serialize_workspace(load(ws)); },
        py::arg("workspace"),
        "Parse a workspace document and return its canonical serialization.");

  m.def("validate", &run_validate, py::arg("workspace"),
        "Check the algebra axioms, the splitting and every derivation; returns the report JSON.");
  m.def("brackets", &run_brackets, py::arg("workspace"), py::arg("max_arity") = 4,
        "Tabulate the derived bracket family of each derivation; returns (report, tables) JSON.");
  m.def("jacobi", &run_jacobi, py::arg("workspace"), py::arg("max_n") = 4,
        "Compare each Jacobiator with the bracket family of the squared derivation; returns the "
        "report JSON.");
  m.def("cocylinder", &run_cocylinder, py::arg("workspace"), py::arg("max_n") = 4,
        py::arg("brute_force") = false,
        "Check the one-bracket extension and the small cocylinder of each derivation; returns the "
        "report JSON.");
  m.def("homology", &run_homology, py::arg("workspace"),
        "Homology dimensions for each odd square-zero derivation; returns the report JSON.");
  m.def("vfield", &run_vfield, py::arg("workspace"), py::arg("cap") = 4,
        "Generating vector fields on a coordinate vector-field algebra; returns (report, fields) "
        "JSON.");

  m.def("gen_wn", [](int n) { return hdb::serialize_workspace(hdb::gen_workspace_wn(n)); },
        py::arg("n"), "Workspace of all vector fields on n odd coordinates.");
  m.def("gen_end_grassmann",
        [](int m_) { return hdb::serialize_workspace(hdb::gen_workspace_end_grassmann(m_)); },
        py::arg("m"),
        "Workspace of the endomorphisms of the Grassmann algebra on m generators, with the order-m "
        "derivation ad(Delta).");
  m.def("gen_ce",
        [](const std::string& constants) {
          return hdb::serialize_workspace(hdb::gen_workspace_ce(hdb::parse_constants(constants)));
        },
        py::arg("constants"),
        "Workspace carrying the quadratic differential of a Lie algebra structure table.");
}
