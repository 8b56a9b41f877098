#pragma once

#include <vector>

namespace fem_accuracy {

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

LineRule gauss_legendre(int points);

/// Rule on the reference n-simplex {x_i >= 0, sum x_i <= 1}. Points are
/// stored as barycentric tuples (lambda_1 = 1 - sum x_i, lambda_{j+1} = x_j)
/// and weights sum to 1/n!.
struct QuadratureRule {
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  int exactness_degree = 0;
};

/// Collapsed (Duffy) tensor-product Gauss-Legendre rule exact for total
/// degree <= `degree`.
QuadratureRule simplex_rule(int dim, int degree);

}  // namespace fem_accuracy
