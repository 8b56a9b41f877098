#include "fem_accuracy/accuracy_prob.hpp"
#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/fem1d.hpp"
#include "fem_accuracy/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fem_accuracy;

namespace {

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["bound_name"] = r.bound_name;
  d["inequality"] = r.inequality;
  d["measured"] = r.measured;
  d["bound"] = r.bound;
  d["pass"] = r.pass;
  d["notes"] = r.notes;
  return d;
}

Simplex reference_simplex(int n) {
  if (n == 1) return Simplex({{0.0}, {1.0}});
  if (n == 2) return Simplex({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  if (n == 3) return Simplex({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  throw std::invalid_argument("reference simplex: n must be 1, 2 or 3");
}

LawKind law_kind(const std::string& s) {
  if (s == "nonlinear") return LawKind::nonlinear;
  if (s == "heaviside") return LawKind::heaviside;
  throw std::invalid_argument("kind must be 'nonlinear' or 'heaviside'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lagrange P_k error constants and accuracy-probability laws";
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", PyExc_ValueError);

  m.def("basis_json", [](int n, int k) { return to_json(build_basis(n, k)).dump(); }, py::arg("n"), py::arg("k"),
        "P_k basis on the reference simplex as a JSON string.");

  m.def("basis_nodes", [](int n, int k) {
    const auto b = build_basis(n, k);
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.node(i));
    return out;
  }, py::arg("n"), py::arg("k"));

  m.def("point_bound_check", [](int n, int k, int r, std::uint64_t seed) {
    PointBoundOptions o;
    o.seed = seed;
    return report_dict(point_bound_check(build_basis(n, k), r, o));
  }, py::arg("n"), py::arg("k"), py::arg("r"), py::arg("seed") = PointBoundOptions{}.seed);

  m.def("seminorm_bound_check", [](int n, int k, int l, double p) {
    return report_dict(seminorm_bound_check(build_basis(n, k), reference_simplex(n), l, p));
  }, py::arg("n"), py::arg("k"), py::arg("l"), py::arg("p"));

  m.def("script_c_k", [](int n, int m_, int k, double p, double sigma, double lambda_max, double cea_ratio, double h_cap) {
    ConstantBundle b;
    b.n = n;
    b.m = m_;
    b.k = k;
    b.p = p;
    b.sigma = sigma;
    b.lambda_max = lambda_max;
    b.cea_ratio = cea_ratio;
    b.h_cap = h_cap;
    return script_C_k(b);
  }, py::arg("n"), py::arg("m"), py::arg("k"), py::arg("p"), py::arg("sigma") = 1.0, py::arg("lambda_max") = 1.0,
        py::arg("cea_ratio") = 1.0, py::arg("h_cap") = 1.0);

  m.def("h_star", [](int k1, int k2, double c_k1, double c_k2) { return h_star({k1, k2, c_k1, c_k2}); }, py::arg("k1"),
        py::arg("k2"), py::arg("c_k1"), py::arg("c_k2"));

  m.def("prob_law", [](double h_star_value, int exponent, double h, const std::string& kind) {
    return prob_law({h_star_value, exponent, law_kind(kind)}, h);
  }, py::arg("h_star"), py::arg("exponent"), py::arg("h"), py::arg("kind") = "nonlinear");

  m.def("h_star_sequence", [](int k, int n, int m_, double p, int q_max, const std::string& model) {
    std::vector<std::tuple<int, double, double>> out;
    for (const auto& r : h_star_sequence(k, n, m_, p, q_max, model_by_name(model, p))) out.emplace_back(r.q, r.h_star, r.h_star_over_q);
    return out;
  }, py::arg("k"), py::arg("n"), py::arg("m"), py::arg("p"), py::arg("q_max"), py::arg("model") = "sin",
        "Rows (q, h*_q, h*_q / q).");

  m.def("weak_star_test", [](int k, int n, int m_, double p, const std::vector<int>& qs, const std::string& model) {
    const auto rep = weak_star_test(k, n, m_, p, qs, model_by_name(model, p), bump(1.0, 2.0));
    std::vector<std::tuple<int, double, double, double>> rows;
    for (const auto& r : rep.rows) rows.emplace_back(r.q, r.h_star, r.pairing, r.error);
    return py::make_tuple(rep.limit, rows);
  }, py::arg("k"), py::arg("n"), py::arg("m"), py::arg("p"), py::arg("q_list"), py::arg("model") = "sin",
        "(limit, rows of (q, h*_q, pairing, error)) for the bump on [1, 2].");

  m.def("convergence_study", [](int k, int m_, double p, double h_min, double h_max) {
    const auto t = convergence_study(sine_problem(), k, m_, p, halving_counts(h_min, h_max));
    py::list rows;
    for (const auto& r : t.rows) {
      py::dict d;
      d["h"] = r.h;
      d["error"] = r.error;
      d["bound"] = r.bound;
      d["order_est"] = r.order_est;
      rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["slope"] = t.slope;
    out["bounds_hold"] = t.bounds_hold;
    out["warnings"] = t.warnings;
    return out;
  }, py::arg("k"), py::arg("m"), py::arg("p"), py::arg("h_min") = 1.0 / 128, py::arg("h_max") = 1.0 / 8,
        "Galerkin convergence table for -u'' + u = f with u = sin(pi x).");
}
