#pragma once

#include "fem_accuracy/pk_basis.hpp"
#include "fem_accuracy/simplex.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fem_accuracy {

/// Thrown when (k, m, n, p) violates an admissibility inequality. The
/// message names the failing inequality.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws AdmissibilityError listing every failed inequality for P_k in
/// W^{m,p} on an n-simplex.
void require_admissible(int k, int m, int n, double p);

/// Inputs of the k-explicit a-priori error constant.
struct ConstantBundle {
  int n = 1;
  int m = 0;
  int k = 1;
  double p = 2.0;
  double sigma = 1.0;       // mesh regularity, >= 1
  double lambda_max = 1.0;  // max |d lambda_q / d x_j|
  double mes_K = 1.0;
  double rho = 1.0;
  /// 1 + ||a|| / alpha_h, >= 1.
  double cea_ratio = 1.0;
  /// Upper bound on h at which xi is evaluated (the domain diameter).
  double h_cap = 1.0;

  /// max_{0 <= l <= m} Lambda^l = max(1, Lambda^m)
  double lambda_star() const;

  /// sigma = mesh.sigma(), Lambda = max over elements, mes_K = largest
  /// element, rho = smallest inscribed diameter, h_cap = domain diameter.
  static ConstantBundle from_mesh(const SimplexMesh& mesh, int k, int m, double p, double cea_ratio = 1.0);
  static ConstantBundle from_simplex(const Simplex& simplex, int k, int m, double p, double cea_ratio = 1.0);

  /// Throws std::invalid_argument for sigma < 1, cea_ratio < 1 or
  /// nonpositive geometry.
  void validate() const;
};

/// One bound-versus-measurement comparison.
struct BoundReport {
  std::string bound_name;
  std::string inequality;  // the inequality being certified, in words
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
};

struct PointBoundOptions {
  int lattice_subdivisions = 50;
  int random_samples = 10'000;
  std::uint64_t seed = 20240601;
};

/// Scans |d^r p_i / d lambda_{q_1} ... d lambda_{q_r}| over a barycentric
/// lattice plus uniform random points of the simplex and compares the
/// largest value to k^{n+1} (r = 0) or k^{r(n+2)} (r >= 1). Sampling can
/// only under-report the supremum.
BoundReport point_bound_check(const PkBasis& basis, int r, const PointBoundOptions& opts = {});

/// max_i |p_i|_{l,p,K} against C_l k^{l(n+2)} / rho^l with
/// C_0 = mes(K)^{1/p}, C_l = [n(n+1)Lambda]^l l! mes(K)^{1/p}.
BoundReport seminorm_bound_check(const PkBasis& basis, const Simplex& simplex, int l, double p);

/// xi(m,p,h) = [(1 - h^{p(m+1)}) / (1 - h^p)]^{1/p}, (m+1)^{1/p} at h = 1.
double xi(int m, double p, double h);

/// C_1 = 1 + [n(n+1)sigma]^m Lambda* m! / n!
double c1_constant(const ConstantBundle& b);
/// C_2 = 1 + 1/n!
double c2_constant(int n);

/// log of (k+n)^n k^{m(n+2)} / [(k-m)! (k+1-m-n/p)].
double log_k_factor(int k, int m, int n, double p);

/// log of the assembled constant
///   cea_ratio * max(C_1, C_2) * xi(m,p,h_cap) * (k+n)^n k^{m(n+2)} / [(k-m)! (k+1-m-n/p)].
/// Throws AdmissibilityError for inadmissible (k, m, n, p).
double log_script_C_k(const ConstantBundle& b);
double script_C_k(const ConstantBundle& b);

/// Local interpolation bound on one element,
///   C(l) * (k+n)^n k^{m(n+2)} / [(k-m)! (k+1-m-n/p)] * |u|_{k+1,p,K} * h_K^{k+1-l}
/// with C(0) = C_2 and C(l) = C_1 for 1 <= l <= m.
double local_interp_bound(const ConstantBundle& b, double u_seminorm, double h_K, int l);

}  // namespace fem_accuracy
