#pragma once

#include "fem_accuracy/polynomial.hpp"
#include "fem_accuracy/simplex.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fem_accuracy {

/// (i_1, ..., i_{n+1}) with i_1 + ... + i_{n+1} = k; labels the lattice
/// node with barycentric coordinates (i_1/k, ..., i_{n+1}/k).
struct MultiIndex {
  std::vector<int> entries;

  int order() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// prod_{c=1}^{i} (k*l - c + 1)/c as a polynomial in one variable l;
/// the constant 1 when i == 0. Requires 0 <= i <= k.
ExactPolynomial auxiliary_factor(int i, int k);

/// Canonical nodal basis of P_k on an n-simplex, written in the n+1
/// barycentric variables. Coefficients are exact; a double copy is kept
/// for evaluation.
class PkBasis {
 public:
  PkBasis(int n, int k);

  int dim() const { return n_; }
  int degree() const { return k_; }
  std::size_t size() const { return nodes_.size(); }

  /// Nodes in lexicographic descending order of the multi-index.
  const std::vector<MultiIndex>& nodes() const { return nodes_; }
  std::vector<Rational> node_exact(std::size_t i) const;
  std::vector<double> node(std::size_t i) const;

  const ExactPolynomial& polynomial(std::size_t i) const { return exact_[i]; }
  const RealPolynomial& real_polynomial(std::size_t i) const { return real_[i]; }
  const std::vector<ExactPolynomial>& polynomials() const { return exact_; }

 private:
  int n_;
  int k_;
  std::vector<MultiIndex> nodes_;
  std::vector<ExactPolynomial> exact_;
  std::vector<RealPolynomial> real_;
};

/// Throws std::invalid_argument for n < 1 or k < 1 and std::overflow_error
/// when C(n+k, n) is not representable.
PkBasis build_basis(int n, int k);

/// d^alpha / dx^alpha of a polynomial in barycentric variables, expanded
/// through the constant gradients d(lambda_q)/dx_j of `simplex`. Orders
/// above the polynomial degree give the zero polynomial.
RealPolynomial spatial_derivative(const RealPolynomial& poly, const Simplex& simplex, std::span<const int> alpha);
RealPolynomial spatial_derivative(const ExactPolynomial& poly, const Simplex& simplex, std::span<const int> alpha);

/// Q = sum_i phi_i p_i on one simplex.
class LocalInterpolant {
 public:
  LocalInterpolant(Simplex simplex, std::vector<double> values, RealPolynomial q)
      : simplex_(std::move(simplex)), values_(std::move(values)), q_(std::move(q)) {}

  const Simplex& simplex() const { return simplex_; }
  const std::vector<double>& nodal_values() const { return values_; }
  /// Q in barycentric variables.
  const RealPolynomial& polynomial() const { return q_; }

  double operator()(std::span<const double> x) const;
  RealPolynomial derivative(std::span<const int> alpha) const { return spatial_derivative(q_, simplex_, alpha); }

 private:
  Simplex simplex_;
  std::vector<double> values_;
  RealPolynomial q_;
};

LocalInterpolant interpolate(const PkBasis& basis, const Simplex& simplex,
                             const std::function<double(std::span<const double>)>& f);

}  // namespace fem_accuracy
