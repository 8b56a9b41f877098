#include "fem_accuracy/fem1d.hpp"

#include "fem_accuracy/accuracy_prob.hpp"
#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/numeric.hpp"
#include "fem_accuracy/quadrature.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fem_accuracy {

namespace {

constexpr double kResidualTolerance = 1e-10;

struct LocalSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

LocalSystem local_system(const PkBasis& basis, const Simplex& K, const std::function<double(double)>& f,
                         const QuadratureRule& stiff_rule, const QuadratureRule& load_rule) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double jac = K.measure();  // reference weights sum to 1 in 1D
  const std::vector<int> dx{1};
  std::vector<RealPolynomial> d;
  for (std::size_t i = 0; i < basis.size(); ++i) d.push_back(spatial_derivative(basis.real_polynomial(i), K, dx));

  LocalSystem s{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (std::size_t q = 0; q < stiff_rule.points.size(); ++q) {
    const auto& lambda = stiff_rule.points[q];
    Eigen::VectorXd v(n), g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = basis.real_polynomial(static_cast<std::size_t>(i)).eval(lambda);
      g[i] = d[static_cast<std::size_t>(i)].eval(lambda);
    }
    s.a += stiff_rule.weights[q] * jac * (g * g.transpose() + v * v.transpose());
  }
  for (std::size_t q = 0; q < load_rule.points.size(); ++q) {
    const auto& lambda = load_rule.points[q];
    const double fx = f(K.to_cartesian(lambda)[0]);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.b[i] += load_rule.weights[q] * jac * fx * basis.real_polynomial(static_cast<std::size_t>(i)).eval(lambda);
    }
  }
  return s;
}

double seminorm_of_u(const ModelProblem& problem, int order, double p) {
  // Fixed reference mesh so |u|_{r,p} does not depend on the mesh under study.
  return seminorm(problem.u, uniform_mesh_1d(0.0, 1.0, 64), order, p).value;
}

}  // namespace

ModelProblem sine_problem() {
  ModelProblem pb;
  pb.name = "sin";
  pb.u = sine_field(1);
  pb.f = [](double x) { return (std::numbers::pi * std::numbers::pi + 1.0) * std::sin(std::numbers::pi * x); };
  pb.u0 = 0.0;
  pb.u1 = 0.0;
  return pb;
}

ModelProblem polynomial_problem(const RealPolynomial& u) {
  if (u.num_vars() != 1) throw std::invalid_argument("polynomial_problem: u must be a polynomial in x alone");
  ModelProblem pb;
  pb.name = "polynomial";
  pb.u = polynomial_field(u);
  const RealPolynomial f = u - u.derivative(0).derivative(0);
  pb.f = [f](double x) { return f.eval(std::span<const double>(&x, 1)); };
  const double zero = 0.0, one = 1.0;
  pb.u0 = u.eval(std::span<const double>(&zero, 1));
  pb.u1 = u.eval(std::span<const double>(&one, 1));
  return pb;
}

DiscreteSolution::DiscreteSolution(SimplexMesh mesh, int k, std::vector<double> coefficients, double relative_residual)
    : mesh_(std::move(mesh)), k_(k), basis_(1, k), coeffs_(std::move(coefficients)), residual_(relative_residual) {
  if (mesh_.dim() != 1) throw std::invalid_argument("DiscreteSolution: 1D meshes only");
  const std::size_t expected = mesh_.points().size() + mesh_.size() * static_cast<std::size_t>(k_ - 1);
  if (coeffs_.size() != expected) throw std::invalid_argument("DiscreteSolution: coefficient count mismatch");
}

std::size_t DiscreteSolution::dof(std::size_t element, int j) const {
  if (j < 0 || j > k_) throw std::out_of_range("DiscreteSolution::dof: local node index");
  const auto& cell = mesh_.cells()[element];
  if (j == 0) return cell[0];
  if (j == k_) return cell[1];
  return mesh_.points().size() + element * static_cast<std::size_t>(k_ - 1) + static_cast<std::size_t>(j - 1);
}

std::vector<RealPolynomial> DiscreteSolution::local_polynomials() const {
  std::vector<RealPolynomial> out;
  out.reserve(mesh_.size());
  for (std::size_t e = 0; e < mesh_.size(); ++e) {
    RealPolynomial q(2);
    for (int j = 0; j <= k_; ++j) q += basis_.real_polynomial(static_cast<std::size_t>(j)) * coeffs_[dof(e, j)];
    out.push_back(std::move(q));
  }
  return out;
}

double DiscreteSolution::operator()(double x) const {
  for (std::size_t e = 0; e < mesh_.size(); ++e) {
    const Simplex& K = mesh_.elements()[e];
    const double a = std::min(K.vertex(0)[0], K.vertex(1)[0]);
    const double b = std::max(K.vertex(0)[0], K.vertex(1)[0]);
    if (x < a || x > b) continue;
    const auto lambda = K.barycentric(std::span<const double>(&x, 1));
    double v = 0.0;
    for (int j = 0; j <= k_; ++j) v += coeffs_[dof(e, j)] * basis_.real_polynomial(static_cast<std::size_t>(j)).eval(lambda);
    return v;
  }
  throw std::out_of_range("DiscreteSolution: x outside the mesh");
}

DiscreteSolution assemble_and_solve(const ModelProblem& problem, const SimplexMesh& mesh, int k) {
  if (k < 1) throw std::invalid_argument("assemble_and_solve: k must be >= 1");
  if (mesh.dim() != 1) throw std::invalid_argument("assemble_and_solve: 1D meshes only");
  const PkBasis basis(1, k);
  const QuadratureRule stiff_rule = simplex_rule(1, 2 * k);
  const QuadratureRule load_rule = simplex_rule(1, 2 * k + 10);

  const auto locals = parallel_map<LocalSystem>(mesh.size(), [&](std::size_t e) {
    return local_system(basis, mesh.elements()[e], problem.f, stiff_rule, load_rule);
  });

  const std::size_t total = mesh.points().size() + mesh.size() * static_cast<std::size_t>(k - 1);
  std::vector<double> coeffs(total, 0.0);
  const DiscreteSolution layout(mesh, k, coeffs, 0.0);

  double lo = mesh.points()[0][0], hi = lo;
  for (const auto& pt : mesh.points()) {
    lo = std::min(lo, pt[0]);
    hi = std::max(hi, pt[0]);
  }
  if (lo != 0.0 || hi != 1.0) throw std::invalid_argument("assemble_and_solve: the mesh must cover [0, 1]");
  std::vector<char> fixed(total, 0);
  for (std::size_t v = 0; v < mesh.points().size(); ++v) {
    const double x = mesh.points()[v][0];
    if (x == 0.0) {
      fixed[v] = 1;
      coeffs[v] = problem.u0;
    } else if (x == 1.0) {
      fixed[v] = 1;
      coeffs[v] = problem.u1;
    }
  }
  std::vector<Eigen::Index> reduced(total, -1);
  Eigen::Index free_count = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (!fixed[i]) reduced[i] = free_count++;
  }
  if (free_count == 0) return DiscreteSolution(mesh, k, std::move(coeffs), 0.0);

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(free_count);
  for (std::size_t e = 0; e < mesh.size(); ++e) {
    const auto& s = locals[e];
    for (int i = 0; i <= k; ++i) {
      const std::size_t gi = layout.dof(e, i);
      if (fixed[gi]) continue;
      rhs[reduced[gi]] += s.b[i];
      for (int j = 0; j <= k; ++j) {
        const std::size_t gj = layout.dof(e, j);
        if (fixed[gj]) {
          rhs[reduced[gi]] -= s.a(i, j) * coeffs[gj];
        } else {
          triplets.emplace_back(reduced[gi], reduced[gj], s.a(i, j));
        }
      }
    }
  }
  Eigen::SparseMatrix<double> a(free_count, free_count);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("assemble_and_solve: factorization failed (singular system)");
  const Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw std::runtime_error("assemble_and_solve: solve failed");
  const double scale = rhs.norm();
  const double residual = scale > 0.0 ? (a * x - rhs).norm() / scale : (a * x).norm();
  if (!(residual <= kResidualTolerance)) {
    std::ostringstream os;
    os << "assemble_and_solve: relative residual " << residual << " exceeds " << kResidualTolerance;
    throw std::runtime_error(os.str());
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (!fixed[i]) coeffs[i] = x[reduced[i]];
  }
  return DiscreteSolution(mesh, k, std::move(coeffs), residual);
}

ErrorReport error_report(const DiscreteSolution& solution, const ModelProblem& problem, int m, double p, double cea_ratio) {
  if (m < 0) throw std::invalid_argument("error_report: m must be >= 0");
  ErrorReport r;
  r.k = solution.degree();
  r.m = m;
  r.p = p;
  r.h = solution.mesh().h();
  const auto local = solution.local_polynomials();
  for (int l = 0; l <= m; ++l) r.seminorms.push_back(error_seminorm(problem.u, solution.mesh(), local, l, p));
  r.norm = error_norm(problem.u, solution.mesh(), local, m, p);
  r.u_seminorm = seminorm_of_u(problem, r.k + 1, p);
  if (!(p > 1.0)) r.warnings.push_back("p <= 1 lies outside the variational setting");

  const auto violations = SobolevIndex{m, p, 1}.violations(r.k);
  r.admissible = violations.empty();
  if (!r.admissible) {
    r.warnings.insert(r.warnings.end(), violations.begin(), violations.end());
    return r;
  }
  const auto bundle = ConstantBundle::from_mesh(solution.mesh(), r.k, m, p, cea_ratio);
  r.constant = script_C_k(bundle);
  r.bound = *r.constant * std::pow(r.h, r.k + 1 - m) * r.u_seminorm;
  r.bound_fraction = *r.bound > 0.0 ? r.norm.value / *r.bound : 0.0;
  r.pass = r.norm.value <= *r.bound;
  return r;
}

std::vector<int> halving_counts(double h_min, double h_max) {
  if (!(h_min > 0.0) || !(h_max >= h_min) || !(h_max <= 1.0)) throw std::invalid_argument("halving_counts: need 0 < hmin <= hmax <= 1");
  std::vector<int> counts;
  for (int n = static_cast<int>(std::lround(1.0 / h_max)); 1.0 / n >= h_min * (1.0 - 1e-12); n *= 2) {
    counts.push_back(n);
    if (n > (1 << 24)) throw std::invalid_argument("halving_counts: hmin too small");
  }
  return counts;
}

ConvergenceTable convergence_study(const ModelProblem& problem, int k, int m, double p, const std::vector<int>& element_counts,
                                   double cea_ratio) {
  if (element_counts.empty()) throw std::invalid_argument("convergence_study: no meshes given");
  ConvergenceTable t;
  std::vector<double> hs, errs;
  for (int count : element_counts) {
    const auto mesh = uniform_mesh_1d(0.0, 1.0, count);
    const auto rep = error_report(assemble_and_solve(problem, mesh, k), problem, m, p, cea_ratio);
    ConvergenceRow row{k, m, p, rep.h, rep.norm.value, rep.bound, std::nullopt};
    if (!t.rows.empty() && row.error > 0.0 && t.rows.back().error > 0.0) {
      row.order_est = std::log(t.rows.back().error / row.error) / std::log(t.rows.back().h / row.h);
    }
    if (rep.bound && !rep.pass) t.bounds_hold = false;
    for (const auto& w : rep.warnings) {
      if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end()) t.warnings.push_back(w);
    }
    hs.push_back(row.h);
    errs.push_back(row.error);
    t.rows.push_back(row);
  }
  bool positive = hs.size() >= 2;
  for (double e : errs) positive = positive && e > 0.0;
  t.slope = positive ? log_log_slope(hs, errs) : 0.0;
  return t;
}

std::vector<CrossoverRow> empirical_crossover(const ModelProblem& problem, int k1, int k2, int m, double p,
                                              const std::vector<double>& h_grid) {
  if (h_grid.empty()) throw std::invalid_argument("empirical_crossover: empty h grid");
  for (std::size_t i = 1; i < h_grid.size(); ++i) {
    if (!(h_grid[i] < h_grid[i - 1])) throw std::invalid_argument("empirical_crossover: h grid must be strictly descending");
  }
  std::optional<AccuracyLaw> law;
  if (k1 != k2) {
    ExplicitHStarInput in;
    in.n = 1;
    in.m = m;
    in.p = p;
    in.k1 = std::min(k1, k2);
    in.k2 = std::max(k1, k2);
    in.seminorm_ratio = seminorm_of_u(problem, in.k1 + 1, p) / seminorm_of_u(problem, in.k2 + 1, p);
    law = AccuracyLaw{h_star_explicit(in), in.k2 - in.k1, LawKind::nonlinear};
  }
  std::vector<CrossoverRow> rows;
  for (double h : h_grid) {
    const int count = static_cast<int>(std::lround(1.0 / h));
    if (count < 1 || std::abs(count * h - 1.0) > 1e-9) throw std::invalid_argument("empirical_crossover: 1/h must be an integer");
    const auto mesh = uniform_mesh_1d(0.0, 1.0, count);
    CrossoverRow row;
    row.h = mesh.h();
    const auto s1 = assemble_and_solve(problem, mesh, k1);
    row.error_k1 = error_norm(problem.u, mesh, s1.local_polynomials(), m, p).value;
    if (k2 == k1) {
      row.error_k2 = row.error_k1;
    } else {
      const auto s2 = assemble_and_solve(problem, mesh, k2);
      row.error_k2 = error_norm(problem.u, mesh, s2.local_polynomials(), m, p).value;
    }
    row.ratio = k1 == k2 ? 1.0 : row.error_k2 / row.error_k1;
    if (law) {
      row.h_star = law->h_star;
      row.probability = prob_law(*law, row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fem_accuracy
