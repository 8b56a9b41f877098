#pragma once

#include "fem_accuracy/polynomial.hpp"

#include <functional>
#include <span>
#include <string>

namespace fem_accuracy {

/// A scalar function on R^dim together with its partial derivatives:
/// derivative(x, alpha) returns d^alpha f (x); alpha = 0 gives f itself.
struct Field {
  int dim = 1;
  std::string name;
  std::function<double(std::span<const double>, std::span<const int>)> derivative;

  double operator()(std::span<const double> x) const;
  double operator()(std::span<const double> x, std::span<const int> alpha) const { return derivative(x, alpha); }
};

/// prod_j sin(pi x_j); in 1D this is sin(pi x).
Field sine_field(int dim);

/// exp(x_1 + ... + x_dim)
Field exp_field(int dim);

/// Polynomial in the Cartesian variables x_1..x_dim (num_vars() == dim).
Field polynomial_field(RealPolynomial poly, std::string name = "polynomial");

/// Derivatives by nested central differences with step
/// cbrt(machine epsilon) * max(1, |x_j|). Each differentiation level loses
/// roughly a factor of the step in accuracy: ~1e-10 relative for first
/// derivatives, ~1e-5 for second; higher orders are not meaningful.
Field finite_difference_field(int dim, std::function<double(std::span<const double>)> f, std::string name = "user");

}  // namespace fem_accuracy
