#include "fem_accuracy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fem_accuracy {

LineRule gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  LineRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

QuadratureRule simplex_rule(int dim, int degree) {
  if (dim < 1) throw std::invalid_argument("simplex_rule: dim must be >= 1");
  if (degree < 0) throw std::invalid_argument("simplex_rule: degree must be >= 0");
  // The collapse Jacobian prod (1 - t_i)^{dim - 1 - i} raises the degree in
  // t_i by at most dim - 1.
  const int npts = (degree + dim) / 2 + 1;
  const LineRule line = gauss_legendre(npts);

  QuadratureRule rule;
  rule.dim = dim;
  rule.exactness_degree = degree;

  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::vector<double> x(static_cast<std::size_t>(dim));
    double remaining = 1.0;
    double weight = 1.0;
    for (int d = 0; d < dim; ++d) {
      const double t = line.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      weight *= line.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])] * remaining;
      x[static_cast<std::size_t>(d)] = remaining * t;
      remaining *= (1.0 - t);
    }
    // weight currently carries prod_d remaining_d, i.e. the Jacobian of the collapse.
    std::vector<double> lambda(static_cast<std::size_t>(dim) + 1);
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      lambda[static_cast<std::size_t>(d) + 1] = x[static_cast<std::size_t>(d)];
      s += x[static_cast<std::size_t>(d)];
    }
    lambda[0] = 1.0 - s;
    rule.points.push_back(std::move(lambda));
    rule.weights.push_back(weight);

    int d = dim - 1;
    while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == npts) {
      idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return rule;
}

}  // namespace fem_accuracy
