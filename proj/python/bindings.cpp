#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syncnet/coupling_design.hpp"
#include "syncnet/error.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/netsim.hpp"
#include "syncnet/numerics.hpp"
#include "syncnet/spectrum.hpp"
#include "syncnet/sync_region.hpp"

namespace py = pybind11;
using namespace syncnet;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& a) {
  if (a.ndim() != 2) throw Error(Errc::DimensionMismatch, "expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::array_t<double> to_numpy(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const DoubleArray& a) { return {a.data(), a.data() + a.size()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Synchronizability analysis and rank-1 inner coupling design";

  py::register_exception<Error>(m, "SyncnetError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("n", &Graph::node_count)
      .def_property_readonly("edges", [](const Graph& g) { return std::vector<Edge>(g.edges().begin(), g.edges().end()); })
      .def("has_edge", &Graph::has_edge)
      .def("degree", &Graph::degree)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) + ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("new_graph", [](int n, const std::vector<Edge>& edges) { return new_graph(n, edges); }, py::arg("n"),
        py::arg("edges"));
  m.def("laplacian", [](const Graph& g) { return to_numpy(laplacian(g)); });
  m.def("complement", &complement);
  m.def("add_edge", &add_edge);
  m.def("connected_components", &connected_components);
  m.def("average_distance", [](const Graph& g) {
    const Rational r = average_distance(g);
    return std::make_pair(r.num, r.den);
  });
  m.def("clustering", [](const Graph& g) {
    const auto c = clustering(g);
    return std::make_pair(c.per_node, c.mean);
  });
  m.def("betweenness", &betweenness);
  m.def("degree_sequence", &degree_sequence);
  m.def("generator_bipartite", &generator_bipartite);
  m.def("generator_matched_cliques", &generator_matched_cliques);

  py::class_<LaplacianSpectrum>(m, "LaplacianSpectrum")
      .def_readonly("values", &LaplacianSpectrum::values)
      .def_readonly("lambda2", &LaplacianSpectrum::lambda2)
      .def_readonly("lambdaN", &LaplacianSpectrum::lambdaN)
      .def_readonly("ratio", &LaplacianSpectrum::ratio)
      .def("multiplicity", &LaplacianSpectrum::multiplicity);
  m.def("spectrum", &spectrum);

  m.def("sym_eigenvalues", [](const DoubleArray& a) { return sym_eigenvalues(to_matrix(a)); });
  m.def("char_poly", [](const DoubleArray& a) { return char_poly(to_matrix(a)); });
  m.def("poly_roots", [](const std::vector<double>& p) { return poly_roots(p); });
  m.def("is_hurwitz", [](const DoubleArray& a, double tol) { return is_hurwitz(to_matrix(a), tol); }, py::arg("m"),
        py::arg("tol") = 0.0);
  m.def("spectral_abscissa", [](const DoubleArray& a) { return spectral_abscissa(to_matrix(a)); });
  m.def("solve_lyapunov", [](const DoubleArray& a, const DoubleArray& q) {
    return to_numpy(solve_lyapunov(to_matrix(a), to_matrix(q)));
  });
  m.def("rank_tol", [](const DoubleArray& a, double tol) { return rank_tol(to_matrix(a), tol); }, py::arg("m"),
        py::arg("tol") = 1e-9);

  py::class_<RegionSet>(m, "RegionSet")
      .def_readonly("sigma_max", &RegionSet::sigma_max)
      .def_property_readonly("intervals",
                             [](const RegionSet& r) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& i : r.intervals) out.emplace_back(i.lo, i.hi);
                               return out;
                             })
      .def_readonly("stable_at_max", &RegionSet::stable_at_max)
      .def_readonly("boundary_tol", &RegionSet::boundary_tol)
      .def_property_readonly("classification", [](const RegionSet& r) { return std::string(to_string(r.classification)); })
      .def("contains", &RegionSet::contains);
  m.def(
      "region_scan",
      [](const DoubleArray& f, const DoubleArray& h, double sigma_max, double grid_step, double boundary_tol) {
        return region_scan(to_matrix(f), to_matrix(h), RegionScanOptions{sigma_max, grid_step, boundary_tol, false});
      },
      py::arg("F"), py::arg("H"), py::arg("sigma_max"), py::arg("grid_step") = 0.0, py::arg("boundary_tol") = 1e-6);

  py::class_<Placement>(m, "Placement")
      .def_readonly("lambda_", &Placement::lambda)
      .def_readonly("sigma", &Placement::sigma)
      .def_readonly("in_region", &Placement::in_region);
  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("c", &CriterionReport::c)
      .def_readonly("placements", &CriterionReport::placements)
      .def_readonly("verdict", &CriterionReport::verdict);
  m.def("check_criterion", &check_criterion);
  m.def("admissible_couplings", [](const LaplacianSpectrum& s, const RegionSet& r) {
    std::vector<std::pair<double, double>> out;
    for (const auto& i : admissible_couplings(s, r).intervals) out.emplace_back(i.lo, i.hi);
    return out;
  });

  py::class_<DesignResult>(m, "DesignResult")
      .def_readonly("b", &DesignResult::b)
      .def_readonly("k", &DesignResult::k)
      .def_readonly("beta", &DesignResult::beta)
      .def_readonly("certificate_eig", &DesignResult::certificate_eig)
      .def_property_readonly("P", [](const DesignResult& d) { return to_numpy(d.P); })
      .def_property_readonly("H", [](const DesignResult& d) { return to_numpy(d.H); });
  m.def("jordan_condition", [](const DoubleArray& f) { return jordan_condition(to_matrix(f)); });
  m.def("pbh_stabilizable",
        [](const DoubleArray& f, const DoubleArray& b) { return pbh_stabilizable(to_matrix(f), to_vector(b)); });
  m.def("choose_b", [](const DoubleArray& f, std::uint64_t seed) { return choose_b(to_matrix(f), seed); },
        py::arg("F"), py::arg("seed") = 0);
  m.def(
      "design_rank1",
      [](const DoubleArray& f, const DoubleArray& b, double q) { return design_rank1(to_matrix(f), to_vector(b), q); },
      py::arg("F"), py::arg("b"), py::arg("q_scale") = 1.0);
  m.def("verify_design", [](const DoubleArray& f, const DoubleArray& h, const std::vector<double>& sigmas) {
    const auto rep = verify_design(to_matrix(f), to_matrix(h), sigmas);
    std::vector<bool> flags;
    for (const auto& s : rep.samples) flags.push_back(s.hurwitz);
    return flags;
  });

  py::class_<ChuaParams>(m, "ChuaParams")
      .def(py::init<>())
      .def_readwrite("kappa", &ChuaParams::kappa)
      .def_readwrite("alpha_c", &ChuaParams::alpha_c)
      .def_readwrite("beta_c", &ChuaParams::beta_c)
      .def_readwrite("gamma_c", &ChuaParams::gamma_c)
      .def_readwrite("a_c", &ChuaParams::a_c)
      .def_readwrite("b_c", &ChuaParams::b_c);
  m.def("chua_field", [](const ChuaParams& p, const std::vector<double>& x) {
    const auto f = chua_field(p, x);
    return std::vector<double>(f.begin(), f.end());
  });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("sync_error", &Trajectory::sync_error)
      .def_readonly("blowup", &Trajectory::blowup)
      .def_readonly("blowup_time", &Trajectory::blowup_time)
      .def_property_readonly("states", [](const Trajectory& t) {
        py::array_t<double> out({t.states.size(), t.nodes, t.node_dim});
        double* dst = out.mutable_data();
        for (const auto& row : t.states) dst = std::copy(row.begin(), row.end(), dst);
        return out;
      });
  m.def(
      "simulate_chua",
      [](const Graph& g, double c, const DoubleArray& h, const ChuaParams& p, std::uint64_t seed, double step,
         double horizon, int stride) {
        NetworkSystem sys{g, c, to_matrix(h), make_chua(p)};
        const auto x0 = random_initial_states(static_cast<std::size_t>(g.node_count()), 3, seed);
        py::gil_scoped_release release;
        return simulate(sys, x0, SimOptions{step, horizon, stride, 1e6});
      },
      py::arg("graph"), py::arg("c"), py::arg("H"), py::arg("params") = ChuaParams{}, py::arg("seed") = 1,
      py::arg("step") = 1e-3, py::arg("horizon") = 200.0, py::arg("stride") = 100);
  m.def("is_synchronized", &is_synchronized, py::arg("trajectory"), py::arg("eps"), py::arg("window"));
}
