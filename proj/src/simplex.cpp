#include "fem_accuracy/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fem_accuracy {

namespace {

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Simplex::Simplex(std::vector<Point> vertices) : dim_(static_cast<int>(vertices.size()) - 1), vertices_(std::move(vertices)) {
  if (dim_ < 1) throw std::invalid_argument("Simplex: need at least 2 vertices");
  for (const auto& v : vertices_) {
    if (static_cast<int>(v.size()) != dim_) {
      throw std::invalid_argument("Simplex: an n-simplex needs n+1 points in R^n (got " +
                                  std::to_string(vertices_.size()) + " points of dimension " +
                                  std::to_string(v.size()) + ")");
    }
  }
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices_.size(); ++b) diameter_ = std::max(diameter_, distance(vertices_[a], vertices_[b]));
  }

  const int n = dim_;
  Eigen::MatrixXd edges(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) edges(i, j) = vertices_[j + 1][i] - vertices_[0][i];
  }
  const double det = edges.determinant();
  if (!(std::abs(det) > 1e-12 * std::pow(diameter_, n))) {
    throw std::domain_error("Simplex: degenerate simplex (|det| = " + std::to_string(std::abs(det)) +
                            ", h_K = " + std::to_string(diameter_) + ")");
  }
  measure_ = std::abs(det) / factorial(n);

  const Eigen::MatrixXd inv = edges.inverse();
  gradients_.resize(n + 1, n);
  gradients_.bottomRows(n) = inv;
  gradients_.row(0) = -inv.colwise().sum();

  double norm_sum = 0.0;
  for (int q = 0; q <= n; ++q) norm_sum += gradients_.row(q).norm();
  rho_ = 2.0 / norm_sum;
  lambda_max_ = gradients_.cwiseAbs().maxCoeff();
}

std::vector<double> Simplex::barycentric(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Simplex::barycentric: point dimension mismatch");
  std::vector<double> lambda(static_cast<std::size_t>(dim_) + 1);
  const Point& v0 = vertices_[0];
  // lambda_q is affine: lambda_q(x) = lambda_q(v0) + grad lambda_q . (x - v0)
  for (int q = 0; q <= dim_; ++q) {
    double s = (q == 0) ? 1.0 : 0.0;
    for (int j = 0; j < dim_; ++j) s += gradients_(q, j) * (x[j] - v0[j]);
    lambda[q] = s;
  }
  return lambda;
}

Point Simplex::to_cartesian(std::span<const double> lambda) const {
  if (static_cast<int>(lambda.size()) != dim_ + 1) throw std::invalid_argument("Simplex::to_cartesian: expected n+1 coordinates");
  Point x(static_cast<std::size_t>(dim_), 0.0);
  for (int q = 0; q <= dim_; ++q) {
    for (int j = 0; j < dim_; ++j) x[j] += lambda[q] * vertices_[q][j];
  }
  return x;
}

SimplexMesh::SimplexMesh(std::vector<Point> points, std::vector<std::vector<std::size_t>> cells)
    : dim_(points.empty() ? 0 : static_cast<int>(points.front().size())), points_(std::move(points)), cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("SimplexMesh: no cells");
  elements_.reserve(cells_.size());
  for (const auto& cell : cells_) {
    std::vector<Point> verts;
    verts.reserve(cell.size());
    for (std::size_t idx : cell) {
      if (idx >= points_.size()) throw std::invalid_argument("SimplexMesh: vertex index out of range");
      verts.push_back(points_[idx]);
    }
    elements_.emplace_back(std::move(verts));
    const Simplex& K = elements_.back();
    h_ = std::max(h_, K.diameter());
    sigma_ = std::max(sigma_, K.diameter() / K.inscribed_diameter());
    lambda_max_ = std::max(lambda_max_, K.lambda_max());
    measure_ += K.measure();
  }
  sigma_ = std::max(sigma_, 1.0);
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) domain_diameter_ = std::max(domain_diameter_, distance(points_[a], points_[b]));
  }
}

SimplexMesh uniform_mesh_1d(double a, double b, int elements) {
  if (elements < 1) throw std::invalid_argument("uniform_mesh_1d: element count must be >= 1");
  if (!(b > a)) throw std::invalid_argument("uniform_mesh_1d: need a < b");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(elements) + 1);
  const double h = (b - a) / elements;
  for (int i = 0; i <= elements; ++i) pts.push_back({i == elements ? b : a + i * h});
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < static_cast<std::size_t>(elements); ++i) cells.push_back({i, i + 1});
  return SimplexMesh(std::move(pts), std::move(cells));
}

SimplexMesh structured_mesh_2d(int per_side) {
  if (per_side < 1) throw std::invalid_argument("structured_mesh_2d: per_side must be >= 1");
  const auto m = static_cast<std::size_t>(per_side);
  std::vector<Point> pts;
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t i = 0; i <= m; ++i) pts.push_back({static_cast<double>(i) / per_side, static_cast<double>(j) / per_side});
  }
  auto id = [m](std::size_t i, std::size_t j) { return j * (m + 1) + i; };
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return SimplexMesh(std::move(pts), std::move(cells));
}

}  // namespace fem_accuracy
