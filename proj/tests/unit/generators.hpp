#pragma once

// Seeded generators for property tests. Every property runs a fixed number
// of cases from a fixed seed so failures reproduce exactly.

#include "fem_accuracy/polynomial.hpp"
#include "fem_accuracy/simplex.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a = 0.0, double b = 1.0) { return a + (b - a) * static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// Uniform point of the standard simplex as n+1 barycentric coordinates.
  std::vector<double> barycentric(int n) {
    std::vector<double> e(static_cast<std::size_t>(n + 1));
    double s = 0.0;
    for (auto& v : e) s += (v = -std::log1p(-uniform()));
    for (auto& v : e) v /= s;
    return e;
  }

  /// Random simplex whose volume is bounded away from zero.
  fem_accuracy::Simplex simplex(int n) {
    for (;;) {
      std::vector<fem_accuracy::Point> v(static_cast<std::size_t>(n + 1), fem_accuracy::Point(static_cast<std::size_t>(n)));
      for (auto& p : v)
        for (auto& c : p) c = uniform(-2.0, 2.0);
      try {
        fem_accuracy::Simplex s(v);
        if (s.inscribed_diameter() > 0.05 * s.diameter()) return s;
      } catch (const std::domain_error&) {
      }
    }
  }

  /// Random polynomial of total degree <= degree with integer coefficients in [-3, 3].
  fem_accuracy::RealPolynomial polynomial(int vars, int degree) {
    fem_accuracy::RealPolynomial p(vars);
    for (int d = 0; d <= degree; ++d) {
      std::vector<int> e(static_cast<std::size_t>(vars), 0);
      for (int t = 0; t < 3; ++t) {
        std::fill(e.begin(), e.end(), 0);
        for (int i = 0; i < d; ++i) ++e[static_cast<std::size_t>(integer(0, vars - 1))];
        p.add_term(e, static_cast<double>(integer(-3, 3)));
      }
    }
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
