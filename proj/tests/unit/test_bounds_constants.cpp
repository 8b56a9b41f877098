#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/norms.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace fem_accuracy;

namespace {

const Simplex& reference_interval() {
  static const Simplex s({{0.0}, {1.0}});
  return s;
}

const Simplex& reference_triangle() {
  static const Simplex s({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double xi_closed_form(int m, double p, double h) {
  if (h == 1.0) return std::pow(m + 1.0, 1.0 / p);
  return std::pow((1.0 - std::pow(h, p * (m + 1))) / (1.0 - std::pow(h, p)), 1.0 / p);
}

// The assembled constant with plain floating-point factorials and powers.
double script_C_k_direct(const ConstantBundle& b) {
  const double c1 = 1.0 + std::pow(b.n * (b.n + 1) * b.sigma, b.m) * std::max(1.0, std::pow(b.lambda_max, b.m)) * factorial(b.m) / factorial(b.n);
  const double c2 = 1.0 + 1.0 / factorial(b.n);
  const double kf = std::pow(b.k + b.n, b.n) * std::pow(b.k, b.m * (b.n + 2)) / (factorial(b.k - b.m) * (b.k + 1 - b.m - b.n / b.p));
  return b.cea_ratio * std::max(c1, c2) * xi_closed_form(b.m, b.p, b.h_cap) * kf;
}

ConstantBundle bundle(int n, int m, int k, double p) {
  ConstantBundle b;
  b.n = n;
  b.m = m;
  b.k = k;
  b.p = p;
  return b;
}

}  // namespace

TEST_CASE("point bounds: worked examples") {
  const auto r0 = point_bound_check(build_basis(1, 2), 0);
  CHECK(r0.measured == doctest::Approx(1.0));
  CHECK(r0.bound == 4.0);
  CHECK(r0.pass);
  const auto r1 = point_bound_check(build_basis(1, 2), 1);
  CHECK(r1.measured == doctest::Approx(4.0));
  CHECK(r1.bound == 8.0);
  CHECK(r1.pass);
  const auto eq = point_bound_check(build_basis(1, 1), 0);
  CHECK(eq.measured == 1.0);
  CHECK(eq.bound == 1.0);
  CHECK(eq.pass);
  CHECK_FALSE(eq.notes.empty());
}

TEST_CASE("point bounds: sampling is reproducible for a fixed seed") {
  PointBoundOptions o;
  o.random_samples = 500;
  const auto a = point_bound_check(build_basis(2, 3), 2, o);
  const auto b = point_bound_check(build_basis(2, 3), 2, o);
  CHECK(a.measured == b.measured);
}

TEST_CASE("seminorm bounds: worked examples") {
  const auto a = seminorm_bound_check(build_basis(1, 1), reference_interval(), 0, 2.0);
  CHECK(a.measured == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(a.bound == doctest::Approx(1.0));
  CHECK(a.pass);
  const auto b = seminorm_bound_check(build_basis(1, 2), reference_interval(), 1, 2.0);
  CHECK(b.bound == doctest::Approx(16.0));
  CHECK(b.measured == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.pass);
  // C_0 carries no rho: a thin triangle with the same area keeps the l = 0 bound.
  const Simplex thin({{0.0, 0.0}, {4.0, 0.0}, {0.0, 0.25}});
  CHECK(seminorm_bound_check(build_basis(2, 2), thin, 0, 2.0).bound ==
        doctest::Approx(seminorm_bound_check(build_basis(2, 2), reference_triangle(), 0, 2.0).bound));
}

TEST_CASE("property: every bound holds on the acceptance grid") {
  PointBoundOptions o;
  o.random_samples = 2000;
  for (int n = 1; n <= 2; ++n) {
    for (int k = 1; k <= 4; ++k) {
      const auto basis = build_basis(n, k);
      for (int r = 0; r <= 2; ++r) {
        const auto rep = point_bound_check(basis, r, o);
        INFO(rep.bound_name);
        CHECK(rep.pass);
      }
      for (int l = 0; l <= 1; ++l) {
        for (double p : {1.5, 2.0, 3.0}) {
          if (!(k + 1 > l + n / p)) continue;
          const auto rep = seminorm_bound_check(basis, n == 1 ? reference_interval() : reference_triangle(), l, p);
          INFO(rep.bound_name);
          CHECK(rep.pass);
        }
      }
    }
  }
}

TEST_CASE("property: seminorm bounds hold on random simplices") {
  gen::Rng rng(808);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.integer(1, 2);
    const int k = rng.integer(1, 4);
    const Simplex s = rng.simplex(n);
    for (int l = 0; l <= 1; ++l) CHECK(seminorm_bound_check(build_basis(n, k), s, l, 2.0).pass);
  }
}

TEST_CASE("xi: worked examples and closed form") {
  CHECK(xi(1, 2.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(xi(0, 3.7, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(xi(1, 2.0, 0.5) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  for (int m = 0; m <= 4; ++m) {
    for (double p : {1.5, 2.0, 3.0}) {
      for (double h : {0.01, 0.1, 0.5, 0.9, 1.1, 2.0, 10.0}) CHECK(xi(m, p, h) == doctest::Approx(xi_closed_form(m, p, h)).epsilon(1e-12));
      CHECK(xi(m, p, 1.0 - 1e-9) == doctest::Approx(xi(m, p, 1.0)).epsilon(1e-8));
      CHECK(xi(m, p, 1.0 + 1e-9) == doctest::Approx(xi(m, p, 1.0)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(xi(1, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("C_1 and C_2") {
  CHECK(c2_constant(1) == 2.0);
  CHECK(c2_constant(3) == doctest::Approx(1.0 + 1.0 / 6.0));
  for (int n = 1; n <= 3; ++n) CHECK(c1_constant(bundle(n, 0, 2, 2.0)) == doctest::Approx(c2_constant(n)));
  ConstantBundle b = bundle(2, 2, 3, 2.0);
  b.sigma = 1.7;
  b.lambda_max = 3.0;
  CHECK(c1_constant(b) == doctest::Approx(1.0 + std::pow(6 * 1.7, 2) * 9.0 * 2.0 / 2.0));
}

TEST_CASE("script C_k: k ratio worked example") {
  const double r = script_C_k(bundle(1, 1, 3, 2.0)) / script_C_k(bundle(1, 1, 2, 2.0));
  CHECK(r == doctest::Approx((108.0 / 5.0) / 16.0).epsilon(1e-13));
  CHECK(r == doctest::Approx(1.35).epsilon(1e-13));
}

TEST_CASE("property: log-space and direct evaluation agree for k <= 15") {
  gen::Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    ConstantBundle b = bundle(rng.integer(1, 3), rng.integer(0, 3), rng.integer(1, 15), rng.uniform(1.1, 5.0));
    if (!SobolevIndex{b.m, b.p, b.n}.admissible(b.k)) continue;
    b.sigma = rng.uniform(1.0, 5.0);
    b.lambda_max = rng.uniform(0.2, 20.0);
    b.cea_ratio = rng.uniform(1.0, 3.0);
    b.h_cap = rng.uniform(0.1, 3.0);
    const double v = script_C_k(b);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(script_C_k_direct(b)).epsilon(1e-10));
  }
}

TEST_CASE("script C_k stays finite far beyond double-range factorials") {
  const double log_c = log_script_C_k(bundle(2, 1, 400, 2.0));
  CHECK(std::isfinite(log_c));
}

// The k-dependence k^{m(n+2)} (k+n)^n / (k-m)! is eventually dominated by the
// factorial, so C_k rises at most over a few small k and then decreases to 0.
TEST_CASE("property: script C_k eventually decreases in k") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 2; ++m) {
      for (double p : {1.5, 2.0, 3.0}) {
        int k_first = 1;
        while (!SobolevIndex{m, p, n}.admissible(k_first)) ++k_first;
        int k0 = -1;
        for (int k = k_first; k < 200; ++k) {
          const bool down = log_script_C_k(bundle(n, m, k + 1, p)) < log_script_C_k(bundle(n, m, k, p));
          if (down && k0 < 0) k0 = k;
          if (!down) k0 = -1;
        }
        INFO("n=" << n << " m=" << m << " p=" << p);
        CHECK(k0 >= 0);
        CHECK(k0 <= 20);
        CHECK(log_script_C_k(bundle(n, m, 300, p)) < -100.0);
      }
    }
  }
}

TEST_CASE("inadmissible parameters are named") {
  try {
    (void)script_C_k(bundle(2, 1, 1, 2.0));
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("n/p >= 1 requires m <= k - 1") != std::string::npos);
  }
  CHECK_THROWS_AS(require_admissible(1, 0, 3, 1.0), AdmissibilityError);
  CHECK_NOTHROW(require_admissible(1, 1, 1, 2.0));
}

TEST_CASE("bundle validation") {
  ConstantBundle b = bundle(1, 0, 1, 2.0);
  b.sigma = 0.5;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b.sigma = 1.0;
  b.cea_ratio = 0.9;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  const auto mesh = uniform_mesh_1d(0.0, 1.0, 4);
  const auto fm = ConstantBundle::from_mesh(mesh, 2, 1, 2.0);
  CHECK(fm.lambda_max == doctest::Approx(4.0));
  CHECK(fm.lambda_star() == doctest::Approx(4.0));
  CHECK(fm.h_cap == doctest::Approx(1.0));
  CHECK(fm.rho == doctest::Approx(0.25));
}

TEST_CASE("local interpolation bound: sin(pi x), k = 2, l = 0, h = 1/8") {
  const auto basis = build_basis(1, 2);
  const auto mesh = uniform_mesh_1d(0.0, 1.0, 8);
  const Field u = sine_field(1);
  for (const auto& K : mesh.elements()) {
    const SimplexMesh one({K.vertex(0), K.vertex(1)}, {{0, 1}});
    const double measured = interpolation_error(u, one, basis, 0, 2.0).value;
    const double useminorm = seminorm(u, one, 3, 2.0).value;
    const auto b = ConstantBundle::from_simplex(K, 2, 0, 2.0);
    CHECK(measured <= local_interp_bound(b, useminorm, K.diameter(), 0));
  }
}

TEST_CASE("local interpolation bound: polynomial and scaling") {
  const auto b = ConstantBundle::from_simplex(reference_interval(), 3, 1, 2.0);
  CHECK(local_interp_bound(b, 0.0, 0.5, 1) == 0.0);
  for (int l = 0; l <= 1; ++l) {
    CHECK(local_interp_bound(b, 1.0, 0.05, l) / local_interp_bound(b, 1.0, 0.1, l) ==
          doctest::Approx(std::pow(0.5, 3 + 1 - l)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(local_interp_bound(b, 1.0, 0.1, 2), std::invalid_argument);
}
