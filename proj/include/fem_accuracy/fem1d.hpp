#pragma once

#include "fem_accuracy/functions.hpp"
#include "fem_accuracy/norms.hpp"
#include "fem_accuracy/pk_basis.hpp"
#include "fem_accuracy/simplex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fem_accuracy {

/// -u'' + u = f on (0, 1) with Dirichlet data taken from the manufactured u.
struct ModelProblem {
  std::string name;
  Field u;
  std::function<double(double)> f;
  double u0 = 0.0;
  double u1 = 0.0;
};

/// u = sin(pi x), f = (pi^2 + 1) sin(pi x).
ModelProblem sine_problem();
/// u given as a polynomial in x (one variable).
ModelProblem polynomial_problem(const RealPolynomial& u);

/// Continuous piecewise P_k function on a 1D mesh. Degrees of freedom are
/// the mesh vertices followed by k-1 interior nodes per element.
class DiscreteSolution {
 public:
  DiscreteSolution(SimplexMesh mesh, int k, std::vector<double> coefficients, double relative_residual);

  const SimplexMesh& mesh() const { return mesh_; }
  int degree() const { return k_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  /// ||A x - b|| / ||b|| of the reduced system (0 when nothing was solved).
  double relative_residual() const { return residual_; }

  /// Global index of local node j (x = x_e + j h_e / k) of element e.
  std::size_t dof(std::size_t element, int j) const;
  /// Restriction to each element in its barycentric variables.
  std::vector<RealPolynomial> local_polynomials() const;
  double operator()(double x) const;

 private:
  SimplexMesh mesh_;
  int k_;
  PkBasis basis_;
  std::vector<double> coeffs_;
  double residual_;
};

/// Galerkin solve with boundary values eliminated. Throws std::runtime_error
/// if the factorization fails or the relative residual exceeds 1e-10.
DiscreteSolution assemble_and_solve(const ModelProblem& problem, const SimplexMesh& mesh, int k);

struct ErrorReport {
  int k = 1;
  int m = 0;
  double p = 2.0;
  double h = 0.0;
  std::vector<NormResult> seminorms;  // l = 0..m
  NormResult norm;
  double u_seminorm = 0.0;  // |u|_{k+1,p}
  bool admissible = true;
  std::optional<double> constant;  // script C_k
  std::optional<double> bound;     // script C_k h^{k+1-m} |u|_{k+1,p}
  /// error / bound: where the error sits inside [0, bound].
  std::optional<double> bound_fraction;
  bool pass = false;
  std::vector<std::string> warnings;
};

ErrorReport error_report(const DiscreteSolution& solution, const ModelProblem& problem, int m, double p,
                         double cea_ratio = 1.0);

struct ConvergenceRow {
  int k = 1;
  int m = 0;
  double p = 2.0;
  double h = 0.0;
  double error = 0.0;
  std::optional<double> bound;
  std::optional<double> order_est;  // against the previous row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // least-squares log-log slope over all rows
  bool bounds_hold = true;
  std::vector<std::string> warnings;
};

ConvergenceTable convergence_study(const ModelProblem& problem, int k, int m, double p, const std::vector<int>& element_counts,
                                   double cea_ratio = 1.0);

/// Element counts 1/h for h from h_max down to h_min by halving.
std::vector<int> halving_counts(double h_min, double h_max);

struct CrossoverRow {
  double h = 0.0;
  double error_k1 = 0.0;
  double error_k2 = 0.0;
  double ratio = 1.0;  // error_k2 / error_k1
  std::optional<double> h_star;
  std::optional<double> probability;
};

/// Measured errors of two orders on a descending h grid beside the model h*
/// and the nonlinear law. For k1 == k2 the ratio is 1 and no law is formed.
std::vector<CrossoverRow> empirical_crossover(const ModelProblem& problem, int k1, int k2, int m, double p,
                                              const std::vector<double>& h_grid);

}  // namespace fem_accuracy
