#include "fem_accuracy/functions.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fem_accuracy {

double Field::operator()(std::span<const double> x) const {
  const std::vector<int> zero(static_cast<std::size_t>(dim), 0);
  return derivative(x, zero);
}

Field sine_field(int dim) {
  if (dim < 1) throw std::invalid_argument("sine_field: dim must be >= 1");
  Field f;
  f.dim = dim;
  f.name = "sin";
  f.derivative = [dim](std::span<const double> x, std::span<const int> alpha) {
    constexpr double pi = std::numbers::pi;
    double v = 1.0;
    for (int j = 0; j < dim; ++j) {
      const int r = alpha[static_cast<std::size_t>(j)];
      // d^r/dx^r sin(pi x) = pi^r sin(pi x + r pi/2); reduce the phase exactly
      const double s = std::sin(pi * x[static_cast<std::size_t>(j)]);
      const double c = std::cos(pi * x[static_cast<std::size_t>(j)]);
      const double phase[4] = {s, c, -s, -c};
      v *= std::pow(pi, r) * phase[r % 4];
    }
    return v;
  };
  return f;
}

Field exp_field(int dim) {
  if (dim < 1) throw std::invalid_argument("exp_field: dim must be >= 1");
  Field f;
  f.dim = dim;
  f.name = "exp";
  f.derivative = [dim](std::span<const double> x, std::span<const int>) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += x[static_cast<std::size_t>(j)];
    return std::exp(s);
  };
  return f;
}

Field polynomial_field(RealPolynomial poly, std::string name) {
  Field f;
  f.dim = poly.num_vars();
  f.name = std::move(name);
  auto shared = std::make_shared<const RealPolynomial>(std::move(poly));
  f.derivative = [shared](std::span<const double> x, std::span<const int> alpha) {
    bool plain = true;
    for (int a : alpha) plain = plain && a == 0;
    if (plain) return shared->eval(x);
    return shared->derivative(alpha).eval(x);
  };
  return f;
}

namespace {

double fd_derivative(const std::function<double(std::span<const double>)>& f, std::vector<double>& x, std::vector<int>& alpha) {
  std::size_t j = 0;
  while (j < alpha.size() && alpha[j] == 0) ++j;
  if (j == alpha.size()) return f(x);
  const double step = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(x[j]));
  --alpha[j];
  const double x0 = x[j];
  x[j] = x0 + step;
  const double fp = fd_derivative(f, x, alpha);
  x[j] = x0 - step;
  const double fm = fd_derivative(f, x, alpha);
  x[j] = x0;
  ++alpha[j];
  return (fp - fm) / (2.0 * step);
}

}  // namespace

Field finite_difference_field(int dim, std::function<double(std::span<const double>)> f, std::string name) {
  if (dim < 1) throw std::invalid_argument("finite_difference_field: dim must be >= 1");
  if (!f) throw std::invalid_argument("finite_difference_field: empty function");
  Field out;
  out.dim = dim;
  out.name = std::move(name);
  out.derivative = [fn = std::move(f)](std::span<const double> x, std::span<const int> alpha) {
    std::vector<double> xs(x.begin(), x.end());
    std::vector<int> as(alpha.begin(), alpha.end());
    return fd_derivative(fn, xs, as);
  };
  return out;
}

}  // namespace fem_accuracy
