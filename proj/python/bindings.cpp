#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nlsg/basegraph.hpp"
#include "nlsg/cli.hpp"
#include "nlsg/construction.hpp"
#include "nlsg/cotype.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/formats.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/spectral.hpp"

namespace py = pybind11;
using namespace nlsg;

namespace {

Multigraph random_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_regular(n, d, rng);
}

py::dict spectrum_dict(const Multigraph& g) {
  SpectralReport r = spectrum(g);
  py::dict out;
  out["eigenvalues"] = r.eigenvalues;
  out["lambda2"] = r.lambda2;
  out["lambda_min"] = r.lambda_min;
  out["lambda"] = r.lambda;
  out["gamma"] = r.gamma;
  out["gamma_plus"] = r.gamma_plus;
  out["method"] = r.method;
  return out;
}

KernelSpace kernel_from(const std::string& name, std::size_t points, double p) {
  if (name == "uniform") return uniform_kernel(points);
  if (name == "line") {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < points; ++i) pts.push_back({static_cast<double>(i)});
    return metric_power_kernel(pts, p);
  }
  throw UsageError("kernel must be 'uniform' or 'line'");
}

py::dict estimate_dict(const PoincareEstimate& e) {
  py::dict out;
  out["value"] = e.value;
  out["exact"] = e.kind == EstimateKind::Exact;
  out["method"] = e.method;
  if (e.witness) {
    out["f"] = e.witness->f;
    out["g"] = e.witness->g;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(nlsg, m) {
  m.doc() = "Regular multigraphs, zig-zag products and Poincare constants";

  // Translators registered later are tried first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<Multigraph>(m, "Multigraph")
      .def_property_readonly("vertices", &Multigraph::vertices)
      .def_property_readonly("degree", &Multigraph::degree)
      .def("rotate",
           [](const Multigraph& g, std::size_t v, std::size_t p) {
             if (v >= g.vertices() || p >= g.degree()) throw py::index_error("vertex or port out of range");
             Port q = g.rotate(v, p);
             return py::make_tuple(q.vertex, q.port);
           })
      .def("neighbors",
           [](const Multigraph& g, std::size_t v) {
             if (v >= g.vertices()) throw py::index_error("vertex out of range");
             std::vector<std::size_t> out;
             for (std::size_t p = 0; p < g.degree(); ++p) out.push_back(g.neighbor(v, p));
             return out;
           })
      .def("__eq__", [](const Multigraph& a, const Multigraph& b) { return a == b; })
      .def("__repr__", [](const Multigraph& g) {
        return "Multigraph(vertices=" + std::to_string(g.vertices()) + ", degree=" + std::to_string(g.degree()) + ")";
      });

  m.def("random_regular", &random_graph, py::arg("n"), py::arg("d"), py::arg("seed") = 1);
  m.def("from_edge_list", &from_edge_list, py::arg("n"), py::arg("edges"), py::arg("loops") = std::vector<std::size_t>{});
  m.def("cycle", &cycle);
  m.def("cycle_with_loops", &cycle_with_loops);
  m.def("complete_with_loops", &complete_with_loops);
  m.def("zigzag", &zigzag);
  m.def("replacement", &replacement);
  m.def("tensor", &tensor);
  m.def("power", &power, py::arg("g"), py::arg("t"), py::arg("cap") = kDefaultPortCap);
  m.def("cesaro", &cesaro, py::arg("g"), py::arg("m"), py::arg("cap") = kDefaultPortCap);
  m.def("edge_complete", &edge_complete);
  m.def("is_connected", &is_connected);

  m.def("spectrum", &spectrum_dict);
  m.def(
      "gamma_plus_exact",
      [](const Multigraph& g, const std::string& kernel, std::size_t points, double p) {
        return estimate_dict(gamma_plus_exact(normalized_adjacency(g), kernel_from(kernel, points, p)));
      },
      py::arg("g"), py::arg("kernel") = "uniform", py::arg("points") = 2, py::arg("p") = 2.0);
  m.def(
      "gamma_plus_search",
      [](const Multigraph& g, const std::string& kernel, std::size_t points, double p, std::uint64_t seed) {
        SearchOptions so;
        so.seed = seed;
        return estimate_dict(gamma_plus_search(normalized_adjacency(g), kernel_from(kernel, points, p), so));
      },
      py::arg("g"), py::arg("kernel") = "line", py::arg("points") = 3, py::arg("p") = 2.0, py::arg("seed") = 1);
  m.def(
      "frechet_lower_bound", [](const Multigraph& g, double p) { return frechet_lower_bound(g, p).value; },
      py::arg("g"), py::arg("p") = 2.0);

  m.def(
      "finish_degree9",
      [](const Multigraph& h) {
        FinishReport r = finish_degree9(h);
        py::dict out;
        out["graph"] = r.graph;
        out["gamma_plus_out"] = r.gamma_plus_out;
        out["bound"] = r.bound;
        out["holds"] = r.holds;
        return out;
      });
  m.def(
      "build_base",
      [](std::size_t n, double t, std::uint64_t seed, std::size_t pairs) {
        BaseGraphReport r = build_base(n, t, seed, pairs);
        py::dict out;
        out["graph"] = r.base;
        out["code_dimension"] = r.code.code.dimension();
        out["distance"] = r.code.distance;
        out["lambda"] = r.spectral.lambda;
        out["sandwich_min"] = r.sandwich_min;
        out["sandwich_max"] = r.sandwich_max;
        out["degree_preserved"] = r.degree_preserved;
        return out;
      },
      py::arg("n"), py::arg("t") = 0.1, py::arg("seed") = 1, py::arg("pairs") = 100);

  m.def("load_graph", &load_graph);
  m.def("save_graph", &save_graph, py::arg("path"), py::arg("g"), py::arg("edge_list") = false);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "nlsg");
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs the command line with the given arguments; returns (status, stdout, stderr).");

  m.attr("FROZEN_C2") = kFrozenC2;
}
