#include "fem_accuracy/numeric.hpp"
#include "fem_accuracy/simplex.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

using namespace fem_accuracy;

namespace {

double edge(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Triangle inradius as area / semi-perimeter, independent of the gradient formula.
double triangle_rho(const Point& a, const Point& b, const Point& c) {
  const double area = 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
  const double s = 0.5 * (edge(a, b) + edge(b, c) + edge(c, a));
  return 2.0 * area / s;
}

}  // namespace

TEST_CASE("compositions are lexicographic descending") {
  const auto c = compositions(2, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::vector<int>{2, 0});
  CHECK(c[1] == std::vector<int>{1, 1});
  CHECK(c[2] == std::vector<int>{0, 2});
  CHECK(compositions(3, 4).size() == 15);
  CHECK(compositions(4, 0).size() == 1);
}

TEST_CASE("lattice size and overflow") {
  CHECK(simplex_lattice_size(2, 2) == 6);
  CHECK(simplex_lattice_size(3, 5) == 56);
  CHECK_THROWS_AS(simplex_lattice_size(200, 200), std::overflow_error);
}

TEST_CASE("compensated sum is insensitive to ordering") {
  gen::Rng rng(7);
  std::vector<double> xs;
  for (int i = 0; i < 5000; ++i) xs.push_back(rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.integer(-8, 8)));
  const double forward = compensated_sum(xs);
  std::vector<double> rev(xs.rbegin(), xs.rend());
  CHECK(std::abs(forward - compensated_sum(rev)) <= 1e-13 * std::max(1.0, std::abs(forward)));
}

TEST_CASE("log-log slope of an exact power law") {
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 2.5));
  CHECK(log_log_slope(h, e) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("parallel_map preserves index order for any thread count") {
  for (const char* threads : {"1", "3", "8"}) {
    ::setenv("FEM_ACCURACY_THREADS", threads, 1);
    const auto v = parallel_map<std::size_t>(1000, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(v[i] == i * i);
  }
  ::unsetenv("FEM_ACCURACY_THREADS");
}

TEST_CASE("barycentric coordinates: worked examples") {
  const Simplex unit({{0.0}, {1.0}});
  const double x = 0.25;
  const auto l = unit.barycentric(std::span<const double>(&x, 1));
  CHECK(l[0] == doctest::Approx(0.75));
  CHECK(l[1] == doctest::Approx(0.25));

  const Simplex tri({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const std::vector<double> c{1.0 / 3.0, 1.0 / 3.0};
  for (double v : tri.barycentric(c)) CHECK(v == doctest::Approx(1.0 / 3.0));

  for (int q = 0; q < 3; ++q) {
    const auto lv = tri.barycentric(tri.vertex(q));
    for (int r = 0; r < 3; ++r) CHECK(lv[static_cast<std::size_t>(r)] == doctest::Approx(q == r ? 1.0 : 0.0));
  }
}

TEST_CASE("barycentric gradients: worked examples") {
  const Simplex unit({{0.0}, {1.0}});
  CHECK(unit.barycentric_gradients()(0, 0) == doctest::Approx(-1.0));
  CHECK(unit.barycentric_gradients()(1, 0) == doctest::Approx(1.0));
  CHECK(unit.lambda_max() == doctest::Approx(1.0));

  const Simplex scaled({{0.0}, {0.2}});
  CHECK(scaled.lambda_max() == doctest::Approx(5.0));

  const Simplex tri({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const auto& g = tri.barycentric_gradients();
  CHECK(g(0, 0) == doctest::Approx(-1.0));
  CHECK(g(0, 1) == doctest::Approx(-1.0));
  CHECK(g(1, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(0.0));
  CHECK(g(2, 0) == doctest::Approx(0.0));
  CHECK(g(2, 1) == doctest::Approx(1.0));
  CHECK(tri.lambda_max() == doctest::Approx(1.0));
}

TEST_CASE("inscribed diameter: worked examples") {
  CHECK(Simplex({{0.0}, {0.3}}).inscribed_diameter() == doctest::Approx(0.3));
  CHECK(Simplex({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}).inscribed_diameter() == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(Simplex({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}).inscribed_diameter() ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("inscribed diameter matches the area over semi-perimeter oracle") {
  gen::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Simplex s = rng.simplex(2);
    CHECK(s.inscribed_diameter() == doctest::Approx(triangle_rho(s.vertex(0), s.vertex(1), s.vertex(2))).epsilon(1e-10));
  }
}

TEST_CASE("degenerate simplices are rejected") {
  CHECK_THROWS_AS(Simplex({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}), std::domain_error);
  CHECK_THROWS_AS(Simplex({{1.0}, {1.0}}), std::domain_error);
  CHECK_THROWS_AS(Simplex({{0.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("property: barycentric coordinates of interior points") {
  gen::Rng rng(20240601);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 20; ++t) {
      const Simplex s = rng.simplex(n);
      const auto& g = s.barycentric_gradients();
      for (Eigen::Index j = 0; j < g.cols(); ++j) CHECK(std::abs(g.col(j).sum()) <= 1e-12 * s.lambda_max());
      for (int i = 0; i < 100; ++i) {
        const auto lambda = rng.barycentric(n);
        const Point x = s.to_cartesian(lambda);
        const auto back = s.barycentric(x);
        double sum = 0.0;
        for (std::size_t q = 0; q < back.size(); ++q) {
          sum += back[q];
          REQUIRE(back[q] >= -1e-12);
          REQUIRE(back[q] <= 1.0 + 1e-12);
          REQUIRE(std::abs(back[q] - lambda[q]) <= 1e-10);
        }
        REQUIRE(std::abs(sum - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: Lambda scales as 1/h") {
  gen::Rng rng(3);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 10; ++t) {
      const Simplex s = rng.simplex(n);
      const double h = rng.uniform(0.01, 10.0);
      auto v = s.vertices();
      for (auto& p : v)
        for (auto& c : p) c *= h;
      const Simplex scaled(v);
      CHECK(scaled.lambda_max() * h == doctest::Approx(s.lambda_max()).epsilon(1e-12));
      CHECK(scaled.measure() == doctest::Approx(s.measure() * std::pow(h, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("meshes: worked examples") {
  const auto m4 = uniform_mesh_1d(0.0, 1.0, 4);
  CHECK(m4.size() == 4);
  CHECK(m4.h() == doctest::Approx(0.25));
  CHECK(m4.sigma() == doctest::Approx(1.0));
  const auto m1 = uniform_mesh_1d(0.0, 1.0, 1);
  CHECK(m1.size() == 1);
  CHECK(m1.h() == doctest::Approx(1.0));
  const auto t2 = structured_mesh_2d(2);
  CHECK(t2.size() == 8);
  CHECK(t2.measure() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t2.sigma() == doctest::Approx(std::sqrt(2.0) / (2.0 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_mesh_1d(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(structured_mesh_2d(0), std::invalid_argument);
}

TEST_CASE("property: mesh measure additivity") {
  for (int n : {1, 3, 7, 16}) {
    CHECK(std::abs(uniform_mesh_1d(-1.0, 2.0, n).measure() - 3.0) <= 1e-12);
    CHECK(std::abs(structured_mesh_2d(n).measure() - 1.0) <= 1e-12);
  }
}
