#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hs2/harness.hpp"

namespace py = pybind11;
using namespace hs2;

namespace {

py::object kappa_value(const std::optional<Distance>& k) {
  if (!k) return py::none();
  if (*k == kInfinite) return py::float_(std::numeric_limits<double>::infinity());
  return py::int_(*k);
}

py::dict params_dict(const StructuralParams& s) {
  py::dict d;
  d["n"] = s.n;
  d["k"] = s.k;
  d["beta"] = s.beta;
  d["m"] = s.m;
  d["kappa"] = kappa_value(s.kappa);
  d["c_size"] = s.c_size;
  d["boundary_size"] = s.boundary_size;
  d["c_min"] = s.c_min;
  d["components_after_cut"] = s.components_after_cut;
  return d;
}

py::dict row_dict(const ResultRow& r) {
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["n"] = r.n;
  d["k"] = r.k;
  d["trial"] = r.trial;
  d["seed"] = r.seed;
  d["budget"] = r.budget;
  d["queries_used"] = r.queries_used;
  d["queries_until_recovery"] = r.queries_until_recovery ? py::object(py::int_(*r.queries_until_recovery)) : py::none();
  d["success"] = r.success;
  d["label_accuracy"] = r.label_accuracy;
  d["seed_sample"] = r.seed_sample;
  d["params"] = params_dict(r.params);
  return d;
}

}  // namespace

PYBIND11_MODULE(_hs2, m) {
  m.doc() = "Hypergraph cut recovery with label and same-class queries";
  py::register_exception<Error>(m, "Hs2Error", PyExc_ValueError);

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init<std::size_t, const std::vector<std::vector<NodeId>>&>(), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Hypergraph::num_nodes)
      .def_property_readonly("num_edges", &Hypergraph::num_edges)
      .def("edge", [](const Hypergraph& g, EdgeId e) {
        if (e >= g.num_edges()) throw py::index_error("edge id out of range");
        auto s = g.edge(e);
        return std::vector<NodeId>(s.begin(), s.end());
      })
      .def("edges", &Hypergraph::edge_lists)
      .def("clique_expansion", [](const Hypergraph& g) { return clique_expansion(g); })
      .def("components", [](const Hypergraph& g) { return connected_components(g); })
      .def("distances_from", [](const Hypergraph& g, NodeId source) {
        if (source >= g.num_nodes()) throw py::index_error("node id out of range");
        const NodeId src[] = {source};
        std::vector<py::object> out;
        for (Distance d : distances_from(g, src)) out.push_back(d == kInfinite ? py::object(py::none()) : py::int_(d));
        return out;
      })
      .def("shortest_path", [](const Hypergraph& g, NodeId u, NodeId v) -> py::object {
        if (u >= g.num_nodes() || v >= g.num_nodes()) throw py::index_error("node id out of range");
        auto p = shortest_path(g, u, v);
        if (!p) return py::none();
        return py::make_tuple(p->edges, p->junctions);
      })
      .def("to_text", [](const Hypergraph& g) {
        std::ostringstream out;
        write_hypergraph(out, g);
        return out.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_hypergraph(in);
      })
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; });

  py::class_<LabelFunction>(m, "LabelFunction")
      .def(py::init<std::vector<ClassId>>(), py::arg("assignment"))
      .def_property_readonly("num_nodes", &LabelFunction::num_nodes)
      .def_property_readonly("num_classes", &LabelFunction::num_classes)
      .def("assignment", &LabelFunction::assignment)
      .def("class_sizes", &LabelFunction::class_sizes);

  m.def("analyze", [](const Hypergraph& g, const LabelFunction& f) { return params_dict(structural_params(g, f)); },
        py::arg("graph"), py::arg("labels"));
  m.def("cut_edges", [](const Hypergraph& g, const LabelFunction& f) { return cut_profile(g, f).cut_edges; });
  m.def("compare_with_ce", [](const Hypergraph& g, const LabelFunction& f) {
    const auto c = compare_with_ce(g, f);
    py::dict d;
    d["hyper"] = params_dict(c.hyper);
    d["expanded"] = params_dict(c.expanded);
    d["beta_equal"] = c.beta_equal;
    d["m_equal"] = c.m_equal;
    d["kappa_equal"] = c.kappa_equal;
    d["boundary_equal"] = c.boundary_equal;
    d["c_min_not_larger"] = c.c_min_not_larger;
    d["all_hold"] = c.all_hold();
    return d;
  });

  m.def("q_star", [](std::size_t n, std::size_t k, double beta, std::size_t m_, std::uint64_t kappa, std::size_t c_min,
                     double delta) { return q_star(BoundInputs{n, k, beta, m_, kappa, c_min, delta, 0.0}); },
        py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("m"), py::arg("kappa"), py::arg("c_min"),
        py::arg("delta"));
  m.def("q_star_pair", [](std::size_t n, std::size_t k, double beta, std::size_t m_, std::uint64_t kappa,
                          std::size_t c_min, double delta) {
    return q_star_pair(BoundInputs{n, k, beta, m_, kappa, c_min, delta, 0.0});
  }, py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("m"), py::arg("kappa"), py::arg("c_min"), py::arg("delta"));
  m.def("witness_bound", &witness_bound, py::arg("beta"), py::arg("delta"));
  m.def("bernoulli_kl", &bernoulli_kl, py::arg("x"), py::arg("y"));
  m.def("kl_lower_bound", &kl_lower_bound, py::arg("x"), py::arg("y"));
  m.def("solve_min_M", &solve_min_M, py::arg("k"), py::arg("beta"), py::arg("p"), py::arg("delta"),
        py::arg("q_star_quarter"));
  m.def("noisy_budget", &noisy_budget, py::arg("k"), py::arg("p"), py::arg("M"), py::arg("q_star_quarter"));

  m.def("hsbm", [](std::size_t n, std::size_t k, std::size_t edge_size, double q_in, double q_out, std::uint64_t seed) {
    auto h = hsbm(HsbmParams{n, k, edge_size, q_in, q_out, seed});
    return py::make_tuple(std::move(h.graph), std::move(h.labels));
  }, py::arg("n"), py::arg("k"), py::arg("edge_size") = 3, py::arg("q_in") = 0.8, py::arg("q_out") = 0.2,
        py::arg("seed") = 0);

  m.def("run_point", [](const Hypergraph& g, const LabelFunction& f, std::uint64_t budget, std::uint64_t seed) {
    PointwiseOracle o(f);
    RunOptions opt{budget, seed, cut_profile(g, f).cut_edges};
    const auto r = hs2_point(g, o, opt);
    py::dict d;
    d["partition"] = r.partition;
    d["removed_edges"] = r.removed_edges;
    d["queries_used"] = r.queries_used;
    d["success"] = r.success;
    return d;
  }, py::arg("graph"), py::arg("labels"), py::arg("budget"), py::arg("seed") = 0);

  m.def("run_experiment", [](const std::string& algorithm, std::size_t n, std::size_t k, const std::string& budget,
                             std::size_t trials, std::uint64_t seed, double delta, double p,
                             std::optional<std::size_t> seed_sample, std::size_t workers) {
    ExperimentConfig c;
    c.algorithm = parse_algorithm(algorithm);
    c.source.kind = InstanceSource::Kind::kHsbm;
    c.source.hsbm.n = n;
    c.source.hsbm.k = k;
    c.budget = parse_budget(budget);
    c.trials = trials;
    c.master_seed = seed;
    c.delta = delta;
    c.p = p;
    c.seed_sample = seed_sample;
    c.workers = workers;
    std::vector<ResultRow> rows;
    {
      py::gil_scoped_release release;
      rows = run_experiment(c);
    }
    py::list out;
    for (const auto& r : rows) out.append(row_dict(r));
    return out;
  }, py::arg("algorithm"), py::arg("n"), py::arg("k"), py::arg("budget") = "auto:q_star", py::arg("trials") = 1,
        py::arg("seed") = 0, py::arg("delta") = 0.1, py::arg("p") = 0.0, py::arg("seed_sample") = py::none(),
        py::arg("workers") = 1);
}
