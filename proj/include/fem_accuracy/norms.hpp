#pragma once

#include "fem_accuracy/functions.hpp"
#include "fem_accuracy/pk_basis.hpp"
#include "fem_accuracy/polynomial.hpp"
#include "fem_accuracy/quadrature.hpp"
#include "fem_accuracy/simplex.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fem_accuracy {

/// Sobolev index (m, p) in dimension n.
struct SobolevIndex {
  int m = 0;
  double p = 2.0;
  int n = 1;

  /// Human-readable statements of every inequality that fails for P_k:
  /// k + 1 > l + n/p for l = 0..m, and the m-range dichotomy on n/p.
  std::vector<std::string> violations(int k) const;
  bool admissible(int k) const { return violations(k).empty(); }
  /// 1 < p < infinity; p <= 1 lies outside the variational setting.
  bool in_variational_range() const { return p > 1.0; }
};

struct NormResult {
  std::string kind;  // "seminorm" or "norm"
  int l = 0;         // order l of the seminorm, or m of the full norm
  double p = 2.0;
  double value = 0.0;
  /// |value(rule of degree d) - value(rule of degree d - 4)|
  double quad_error_estimate = 0.0;
  std::vector<std::string> warnings;
};

struct NormOptions {
  /// Degree of the primary rule. Unset: 12 for fields, 2*deg + 6 for
  /// piecewise polynomials of degree deg.
  std::optional<int> quad_degree;
};

/// All spatial multi-indices alpha in N^dim with |alpha| = order.
std::vector<std::vector<int>> spatial_multi_indices(int dim, int order);

/// |f|_{l,p} over the mesh.
NormResult seminorm(const Field& f, const SimplexMesh& mesh, int l, double p, const NormOptions& opts = {});
/// ||f||_{m,p} over the mesh.
NormResult sobolev_norm(const Field& f, const SimplexMesh& mesh, int m, double p, const NormOptions& opts = {});

/// |poly|_{l,p,K} for a polynomial written in the barycentric variables
/// of K. Even integer p uses a rule exact for |d^alpha poly|^p.
NormResult seminorm(const RealPolynomial& poly, const Simplex& simplex, int l, double p, const NormOptions& opts = {});

/// |u - v_h|_{l,p} where v_h restricted to element e is local[e], a
/// polynomial in that element's barycentric variables.
NormResult error_seminorm(const Field& u, const SimplexMesh& mesh, std::span<const RealPolynomial> local, int l, double p,
                          const NormOptions& opts = {});
NormResult error_norm(const Field& u, const SimplexMesh& mesh, std::span<const RealPolynomial> local, int m, double p,
                      const NormOptions& opts = {});

/// Element-wise Lagrange interpolants of u.
std::vector<RealPolynomial> interpolate_on_mesh(const Field& u, const SimplexMesh& mesh, const PkBasis& basis);

/// |u - Pi_h u|_{l,p}. An inadmissible (k, l, n, p) is reported as a
/// warning; the measurement itself is still well defined.
NormResult interpolation_error(const Field& u, const SimplexMesh& mesh, const PkBasis& basis, int l, double p,
                               const NormOptions& opts = {});

}  // namespace fem_accuracy
