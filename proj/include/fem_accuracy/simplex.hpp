#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace fem_accuracy {

using Point = std::vector<double>;

/// A nondegenerate n-simplex in R^n. All derived quantities are computed
/// once at construction; the object is immutable afterwards.
class Simplex {
 public:
  /// Throws std::invalid_argument for malformed input and std::domain_error
  /// when the vertices are affinely dependent (|det| <= 1e-12 * h_K^n).
  explicit Simplex(std::vector<Point> vertices);

  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int q) const { return vertices_[static_cast<std::size_t>(q)]; }

  double measure() const { return measure_; }
  /// h_K: longest edge.
  double diameter() const { return diameter_; }
  /// rho: diameter of the inscribed ball, 2 / sum_q |grad lambda_q|.
  double inscribed_diameter() const { return rho_; }

  /// Row q holds d(lambda_q)/dx_j, j = 0..n-1.
  const Eigen::MatrixXd& barycentric_gradients() const { return gradients_; }
  /// max_{q,j} |d(lambda_q)/dx_j|.
  double lambda_max() const { return lambda_max_; }

  std::vector<double> barycentric(std::span<const double> x) const;
  Point to_cartesian(std::span<const double> lambda) const;

 private:
  int dim_;
  std::vector<Point> vertices_;
  Eigen::MatrixXd gradients_;
  double measure_ = 0.0;
  double diameter_ = 0.0;
  double rho_ = 0.0;
  double lambda_max_ = 0.0;
};

/// Conforming simplicial mesh: shared vertex table plus cell connectivity.
class SimplexMesh {
 public:
  SimplexMesh(std::vector<Point> points, std::vector<std::vector<std::size_t>> cells);

  int dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
  const std::vector<Simplex>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// max_K h_K
  double h() const { return h_; }
  /// max_K h_K / rho_K, the tightest admissible regularity bound.
  double sigma() const { return sigma_; }
  /// max_K Lambda_K (a nonuniform mesh takes the worst element).
  double lambda_max() const { return lambda_max_; }
  /// sum_K mes(K)
  double measure() const { return measure_; }
  /// Largest distance between two mesh vertices.
  double domain_diameter() const { return domain_diameter_; }

 private:
  int dim_;
  std::vector<Point> points_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<Simplex> elements_;
  double h_ = 0.0;
  double sigma_ = 0.0;
  double lambda_max_ = 0.0;
  double measure_ = 0.0;
  double domain_diameter_ = 0.0;
};

/// [a, b] split into `elements` equal intervals.
SimplexMesh uniform_mesh_1d(double a, double b, int elements);

/// Unit square, `per_side` x `per_side` squares each cut along the
/// (0,0)-(1,1) diagonal direction into two right triangles.
SimplexMesh structured_mesh_2d(int per_side);

}  // namespace fem_accuracy
