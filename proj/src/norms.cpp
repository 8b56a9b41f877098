#include "fem_accuracy/norms.hpp"

#include "fem_accuracy/numeric.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace fem_accuracy {

namespace {

using PointFn = std::function<double(const Point&, std::span<const double>)>;

struct Powers {
  double primary = 0.0;
  double comparison = 0.0;
};

double n_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double element_power(const Simplex& K, const QuadratureRule& rule, double p, const PointFn& g) {
  const double scale = K.measure() * n_factorial(K.dim());
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const auto& lambda = rule.points[i];
    const Point x = K.to_cartesian(lambda);
    s.add(rule.weights[i] * std::pow(std::abs(g(x, lambda)), p));
  }
  return scale * s.value();
}

void check_order_and_p(int l, double p, const char* where) {
  if (l < 0) throw std::invalid_argument(std::string(where) + ": derivative order must be >= 0");
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument(std::string(where) + ": p must be a finite positive number");
}

/// Sums over elements and |alpha| = l of int_K |g_{e,alpha}|^p with two rules.
Powers mesh_powers(const SimplexMesh& mesh, int l, double p, int primary_degree, int comparison_degree,
                   const std::function<PointFn(std::size_t, const std::vector<int>&)>& make) {
  const QuadratureRule primary = simplex_rule(mesh.dim(), primary_degree);
  const QuadratureRule comparison = simplex_rule(mesh.dim(), comparison_degree);
  const auto alphas = spatial_multi_indices(mesh.dim(), l);
  const auto per_element = parallel_map<Powers>(mesh.size(), [&](std::size_t e) {
    const Simplex& K = mesh.elements()[e];
    Powers acc;
    for (const auto& alpha : alphas) {
      const PointFn g = make(e, alpha);
      acc.primary += element_power(K, primary, p, g);
      acc.comparison += element_power(K, comparison, p, g);
    }
    return acc;
  });
  CompensatedSum a, b;
  for (const auto& pw : per_element) {
    a.add(pw.primary);
    b.add(pw.comparison);
  }
  return {a.value(), b.value()};
}

NormResult finish(std::string kind, int l, double p, const Powers& pw) {
  NormResult r;
  r.kind = std::move(kind);
  r.l = l;
  r.p = p;
  r.value = std::pow(pw.primary, 1.0 / p);
  r.quad_error_estimate = std::abs(r.value - std::pow(pw.comparison, 1.0 / p));
  return r;
}

int comparison_degree_for(int primary) { return primary >= 4 ? primary - 4 : primary + 2; }

bool is_even_integer(double p) { return p == std::floor(p) && static_cast<long>(p) % 2 == 0; }

int max_degree(std::span<const RealPolynomial> local) {
  int d = 0;
  for (const auto& q : local) d = std::max(d, q.degree());
  return d;
}

}  // namespace

std::vector<std::string> SobolevIndex::violations(int k) const {
  std::vector<std::string> out;
  const double ratio = n / p;
  auto fmt = [&](const std::string& what) {
    std::ostringstream os;
    os << "inadmissible (k=" << k << ", m=" << m << ", n=" << n << ", p=" << p << "): " << what;
    return os.str();
  };
  if (k < 1) out.push_back(fmt("k must be >= 1"));
  if (m < 0) out.push_back(fmt("m must be >= 0"));
  for (int l = 0; l <= m; ++l) {
    if (!(k + 1 > l + ratio)) out.push_back(fmt("k + 1 > l + n/p fails for l = " + std::to_string(l)));
  }
  if (ratio < 1.0) {
    if (!(m <= k)) out.push_back(fmt("n/p < 1 requires m <= k"));
  } else {
    if (!(m <= k - 1)) out.push_back(fmt("n/p >= 1 requires m <= k - 1"));
    if (!(k + 1 - ratio > 0)) out.push_back(fmt("n/p >= 1 requires k + 1 - n/p > 0"));
  }
  return out;
}

std::vector<std::vector<int>> spatial_multi_indices(int dim, int order) { return compositions(dim, order); }

namespace {

Powers field_powers(const Field& f, const SimplexMesh& mesh, int l, double p, int deg) {
  return mesh_powers(mesh, l, p, deg, comparison_degree_for(deg), [&](std::size_t, const std::vector<int>& alpha) {
    return PointFn([&f, alpha](const Point& x, std::span<const double>) { return f.derivative(x, alpha); });
  });
}

}  // namespace

NormResult seminorm(const Field& f, const SimplexMesh& mesh, int l, double p, const NormOptions& opts) {
  check_order_and_p(l, p, "seminorm");
  if (f.dim != mesh.dim()) throw std::invalid_argument("seminorm: field and mesh dimensions differ");
  return finish("seminorm", l, p, field_powers(f, mesh, l, p, opts.quad_degree.value_or(12)));
}

NormResult sobolev_norm(const Field& f, const SimplexMesh& mesh, int m, double p, const NormOptions& opts) {
  check_order_and_p(m, p, "sobolev_norm");
  if (f.dim != mesh.dim()) throw std::invalid_argument("sobolev_norm: field and mesh dimensions differ");
  Powers total;
  for (int l = 0; l <= m; ++l) {
    const Powers pw = field_powers(f, mesh, l, p, opts.quad_degree.value_or(12));
    total.primary += pw.primary;
    total.comparison += pw.comparison;
  }
  return finish("norm", m, p, total);
}

NormResult seminorm(const RealPolynomial& poly, const Simplex& simplex, int l, double p, const NormOptions& opts) {
  check_order_and_p(l, p, "seminorm");
  if (poly.num_vars() != simplex.dim() + 1) throw std::invalid_argument("seminorm: polynomial must use n+1 barycentric variables");
  const int reduced = std::max(poly.degree() - l, 0);
  int deg = 0;
  int cmp = 0;
  if (opts.quad_degree) {
    deg = *opts.quad_degree;
    cmp = comparison_degree_for(deg);
  } else if (is_even_integer(p)) {
    deg = static_cast<int>(p) * reduced;
    cmp = deg + 2;
  } else {
    deg = 2 * std::max(poly.degree(), 0) + 6;
    cmp = deg - 4;
  }
  const auto alphas = spatial_multi_indices(simplex.dim(), l);
  std::vector<RealPolynomial> derivs;
  for (const auto& alpha : alphas) derivs.push_back(spatial_derivative(poly, simplex, alpha));
  const QuadratureRule primary = simplex_rule(simplex.dim(), deg);
  const QuadratureRule comparison = simplex_rule(simplex.dim(), cmp);
  Powers pw;
  for (const auto& d : derivs) {
    const PointFn g = [&d](const Point&, std::span<const double> lambda) { return d.eval(lambda); };
    pw.primary += element_power(simplex, primary, p, g);
    pw.comparison += element_power(simplex, comparison, p, g);
  }
  return finish("seminorm", l, p, pw);
}

namespace {

Powers error_powers(const Field& u, const SimplexMesh& mesh, std::span<const RealPolynomial> local, int l, double p,
                    const NormOptions& opts) {
  if (local.size() != mesh.size()) throw std::invalid_argument("error norm: need one local polynomial per element");
  if (u.dim != mesh.dim()) throw std::invalid_argument("error norm: field and mesh dimensions differ");
  const int deg = opts.quad_degree.value_or(2 * max_degree(local) + 6);
  return mesh_powers(mesh, l, p, deg, comparison_degree_for(deg), [&](std::size_t e, const std::vector<int>& alpha) {
    auto d = std::make_shared<const RealPolynomial>(spatial_derivative(local[e], mesh.elements()[e], alpha));
    return PointFn([&u, alpha, d](const Point& x, std::span<const double> lambda) { return u.derivative(x, alpha) - d->eval(lambda); });
  });
}

}  // namespace

NormResult error_seminorm(const Field& u, const SimplexMesh& mesh, std::span<const RealPolynomial> local, int l, double p,
                          const NormOptions& opts) {
  check_order_and_p(l, p, "error_seminorm");
  return finish("seminorm", l, p, error_powers(u, mesh, local, l, p, opts));
}

NormResult error_norm(const Field& u, const SimplexMesh& mesh, std::span<const RealPolynomial> local, int m, double p,
                      const NormOptions& opts) {
  check_order_and_p(m, p, "error_norm");
  Powers total;
  for (int l = 0; l <= m; ++l) {
    const Powers pw = error_powers(u, mesh, local, l, p, opts);
    total.primary += pw.primary;
    total.comparison += pw.comparison;
  }
  return finish("norm", m, p, total);
}

std::vector<RealPolynomial> interpolate_on_mesh(const Field& u, const SimplexMesh& mesh, const PkBasis& basis) {
  if (basis.dim() != mesh.dim()) throw std::invalid_argument("interpolate_on_mesh: basis and mesh dimensions differ");
  std::vector<RealPolynomial> local;
  local.reserve(mesh.size());
  auto fn = [&u](std::span<const double> x) { return u(x); };
  for (const auto& K : mesh.elements()) local.push_back(interpolate(basis, K, fn).polynomial());
  return local;
}

NormResult interpolation_error(const Field& u, const SimplexMesh& mesh, const PkBasis& basis, int l, double p,
                               const NormOptions& opts) {
  const auto local = interpolate_on_mesh(u, mesh, basis);
  NormResult r = error_seminorm(u, mesh, local, l, p, opts);
  const int k = basis.degree();
  const double ratio = mesh.dim() / p;
  if (!(k + 1 > l + ratio)) {
    std::ostringstream os;
    os << "inadmissible (k=" << k << ", l=" << l << ", n=" << mesh.dim() << ", p=" << p << "): k + 1 > l + n/p fails";
    r.warnings.push_back(os.str());
  }
  if (!(p > 1.0)) r.warnings.push_back("p <= 1 lies outside the variational setting");
  return r;
}

}  // namespace fem_accuracy
