#include "fem_accuracy/pk_basis.hpp"

#include "fem_accuracy/numeric.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace fem_accuracy {

int MultiIndex::order() const { return std::accumulate(entries.begin(), entries.end(), 0); }

ExactPolynomial auxiliary_factor(int i, int k) {
  if (k < 1) throw std::invalid_argument("auxiliary_factor: k must be >= 1");
  if (i < 0 || i > k) {
    throw std::invalid_argument("auxiliary_factor: need 0 <= i <= k (i=" + std::to_string(i) + ", k=" + std::to_string(k) + ")");
  }
  ExactPolynomial p = ExactPolynomial::constant(1, Rational(1));
  const ExactPolynomial lambda = ExactPolynomial::variable(1, 0);
  for (int c = 1; c <= i; ++c) {
    // (k*lambda - c + 1) / c
    ExactPolynomial factor = lambda * Rational(k, c) + ExactPolynomial::constant(1, Rational(1 - c, c));
    p = p * factor;
  }
  return p;
}

PkBasis::PkBasis(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw std::invalid_argument("build_basis: n must be >= 1");
  if (k < 1) throw std::invalid_argument("build_basis: k must be >= 1");
  const std::size_t expected = simplex_lattice_size(n, k);
  // Guard against absurd requests that would exhaust memory long before overflow.
  if (expected > 5'000'000) {
    throw std::overflow_error("build_basis: basis size " + std::to_string(expected) + " too large for n=" +
                              std::to_string(n) + ", k=" + std::to_string(k));
  }

  const int vars = n + 1;
  std::vector<ExactPolynomial> factors;
  factors.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) factors.push_back(auxiliary_factor(i, k));

  for (auto& idx : compositions(vars, k)) {
    ExactPolynomial p = ExactPolynomial::constant(vars, Rational(1));
    for (int j = 0; j < vars; ++j) {
      const int target[] = {j};
      p = p * factors[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])].embed(vars, target);
    }
    real_.push_back(p.convert<double>());
    exact_.push_back(std::move(p));
    nodes_.push_back(MultiIndex{std::move(idx)});
  }
  if (nodes_.size() != expected) throw std::logic_error("build_basis: lattice enumeration size mismatch");
}

std::vector<Rational> PkBasis::node_exact(std::size_t i) const {
  std::vector<Rational> out;
  for (int e : nodes_.at(i).entries) out.emplace_back(e, k_);
  return out;
}

std::vector<double> PkBasis::node(std::size_t i) const {
  std::vector<double> out;
  for (int e : nodes_.at(i).entries) out.push_back(static_cast<double>(e) / k_);
  return out;
}

PkBasis build_basis(int n, int k) { return PkBasis(n, k); }

RealPolynomial spatial_derivative(const RealPolynomial& poly, const Simplex& simplex, std::span<const int> alpha) {
  const int n = simplex.dim();
  if (poly.num_vars() != n + 1) throw std::invalid_argument("spatial_derivative: polynomial must have n+1 barycentric variables");
  if (static_cast<int>(alpha.size()) != n) throw std::invalid_argument("spatial_derivative: alpha must have n entries");
  const Eigen::MatrixXd& grad = simplex.barycentric_gradients();
  RealPolynomial current = poly;
  for (int j = 0; j < n; ++j) {
    if (alpha[static_cast<std::size_t>(j)] < 0) throw std::invalid_argument("spatial_derivative: negative order");
    for (int t = 0; t < alpha[static_cast<std::size_t>(j)]; ++t) {
      // d/dx_j = sum_q Lambda^q_j d/dlambda_q
      RealPolynomial next(n + 1);
      for (int q = 0; q <= n; ++q) {
        const double g = grad(q, j);
        if (g == 0.0) continue;
        next += current.derivative(q) * g;
      }
      current = std::move(next);
    }
  }
  return current;
}

RealPolynomial spatial_derivative(const ExactPolynomial& poly, const Simplex& simplex, std::span<const int> alpha) {
  return spatial_derivative(poly.convert<double>(), simplex, alpha);
}

double LocalInterpolant::operator()(std::span<const double> x) const {
  const auto lambda = simplex_.barycentric(x);
  return q_.eval(lambda);
}

LocalInterpolant interpolate(const PkBasis& basis, const Simplex& simplex,
                             const std::function<double(std::span<const double>)>& f) {
  if (basis.dim() != simplex.dim()) throw std::invalid_argument("interpolate: basis and simplex dimensions differ");
  std::vector<double> values;
  values.reserve(basis.size());
  RealPolynomial q(basis.dim() + 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto lambda = basis.node(i);
    const Point x = simplex.to_cartesian(lambda);
    const double v = f(x);
    values.push_back(v);
    q += basis.real_polynomial(i) * v;
  }
  return LocalInterpolant(simplex, std::move(values), std::move(q));
}

}  // namespace fem_accuracy
