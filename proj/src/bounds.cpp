#include "fem_accuracy/bounds.hpp"

#include "fem_accuracy/norms.hpp"
#include "fem_accuracy/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fem_accuracy {

namespace {

// Relative slack for comparisons of quantities computed in double precision.
constexpr double kCompareSlack = 1e-12;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> random_barycentric(std::mt19937_64& rng, int vars) {
  std::vector<double> e(static_cast<std::size_t>(vars));
  double s = 0.0;
  for (auto& v : e) {
    v = -std::log1p(-uniform01(rng));
    s += v;
  }
  for (auto& v : e) v /= s;
  return e;
}

}  // namespace

void require_admissible(int k, int m, int n, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be a finite positive number");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const auto v = SobolevIndex{m, p, n}.violations(k);
  if (v.empty()) return;
  std::string msg = v.front();
  for (std::size_t i = 1; i < v.size(); ++i) msg += "; " + v[i].substr(v[i].find("): ") + 3);
  throw AdmissibilityError(msg);
}

double ConstantBundle::lambda_star() const { return std::max(1.0, std::pow(lambda_max, m)); }

void ConstantBundle::validate() const {
  if (!(sigma >= 1.0)) throw std::invalid_argument("ConstantBundle: sigma must be >= 1");
  if (!(cea_ratio >= 1.0)) throw std::invalid_argument("ConstantBundle: cea_ratio must be >= 1");
  if (!(lambda_max > 0.0) || !(mes_K > 0.0) || !(rho > 0.0) || !(h_cap > 0.0)) {
    throw std::invalid_argument("ConstantBundle: geometric quantities must be positive");
  }
}

ConstantBundle ConstantBundle::from_mesh(const SimplexMesh& mesh, int k, int m, double p, double cea_ratio) {
  ConstantBundle b;
  b.n = mesh.dim();
  b.m = m;
  b.k = k;
  b.p = p;
  b.sigma = mesh.sigma();
  b.lambda_max = mesh.lambda_max();
  b.mes_K = 0.0;
  b.rho = mesh.elements().front().inscribed_diameter();
  for (const auto& K : mesh.elements()) {
    b.mes_K = std::max(b.mes_K, K.measure());
    b.rho = std::min(b.rho, K.inscribed_diameter());
  }
  b.cea_ratio = cea_ratio;
  b.h_cap = mesh.domain_diameter();
  b.validate();
  return b;
}

ConstantBundle ConstantBundle::from_simplex(const Simplex& simplex, int k, int m, double p, double cea_ratio) {
  ConstantBundle b;
  b.n = simplex.dim();
  b.m = m;
  b.k = k;
  b.p = p;
  b.sigma = std::max(1.0, simplex.diameter() / simplex.inscribed_diameter());
  b.lambda_max = simplex.lambda_max();
  b.mes_K = simplex.measure();
  b.rho = simplex.inscribed_diameter();
  b.cea_ratio = cea_ratio;
  b.h_cap = simplex.diameter();
  b.validate();
  return b;
}

BoundReport point_bound_check(const PkBasis& basis, int r, const PointBoundOptions& opts) {
  if (r < 0) throw std::invalid_argument("point_bound_check: r must be >= 0");
  if (opts.random_samples < 0 || opts.lattice_subdivisions < 1) throw std::invalid_argument("point_bound_check: bad sampling options");
  const int n = basis.dim();
  const int k = basis.degree();
  const int vars = n + 1;

  std::vector<std::vector<double>> points;
  for (const auto& c : compositions(vars, opts.lattice_subdivisions)) {
    std::vector<double> lambda;
    for (int v : c) lambda.push_back(static_cast<double>(v) / opts.lattice_subdivisions);
    points.push_back(std::move(lambda));
  }
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < opts.random_samples; ++s) points.push_back(random_barycentric(rng, vars));

  const auto orders = compositions(vars, r);
  std::vector<RealPolynomial> derivs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& ord : orders) derivs.push_back(basis.real_polynomial(i).derivative(ord));
  }
  const auto maxima = parallel_map<double>(derivs.size(), [&](std::size_t d) {
    double mx = 0.0;
    if (derivs[d].is_zero()) return mx;
    for (const auto& lambda : points) mx = std::max(mx, std::abs(derivs[d].eval(lambda)));
    return mx;
  });

  BoundReport rep;
  std::ostringstream name;
  name << "point_bound(n=" << n << ",k=" << k << ",r=" << r << ")";
  rep.bound_name = name.str();
  rep.inequality = r == 0 ? "|p_i| <= k^(n+1)" : "|d^r p_i / dlambda_q1..dlambda_qr| <= k^(r(n+2))";
  rep.measured = maxima.empty() ? 0.0 : *std::max_element(maxima.begin(), maxima.end());
  rep.bound = r == 0 ? std::pow(k, n + 1) : std::pow(k, r * (n + 2));
  rep.pass = rep.measured <= rep.bound * (1.0 + kCompareSlack);
  rep.notes.push_back("sampled maximum over " + std::to_string(points.size()) +
                      " points; sampling can only under-report the supremum");
  return rep;
}

BoundReport seminorm_bound_check(const PkBasis& basis, const Simplex& simplex, int l, double p) {
  if (l < 0) throw std::invalid_argument("seminorm_bound_check: l must be >= 0");
  if (!(p > 0.0)) throw std::invalid_argument("seminorm_bound_check: p must be positive");
  if (basis.dim() != simplex.dim()) throw std::invalid_argument("seminorm_bound_check: dimension mismatch");
  const int n = basis.dim();
  const int k = basis.degree();

  BoundReport rep;
  std::ostringstream name;
  name << "seminorm_bound(n=" << n << ",k=" << k << ",l=" << l << ",p=" << p << ")";
  rep.bound_name = name.str();
  rep.inequality = l == 0 ? "|p_i|_{0,p,K} <= mes(K)^(1/p) k^(n+1)"
                          : "|p_i|_{l,p,K} <= [n(n+1)Lambda]^l l! mes(K)^(1/p) k^(l(n+2)) / rho^l";
  if (!(k + 1 > l + n / p)) rep.notes.push_back("warning: k + 1 > l + n/p fails; the estimate is not guaranteed");

  double measured = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    measured = std::max(measured, seminorm(basis.real_polynomial(i), simplex, l, p).value);
  }
  const double c0 = std::pow(simplex.measure(), 1.0 / p);
  double bound = 0.0;
  if (l == 0) {
    bound = c0 * std::pow(k, n + 1);
  } else {
    const double log_cl = l * std::log(n * (n + 1) * simplex.lambda_max()) + log_factorial(l) + std::log(c0);
    bound = std::exp(log_cl + l * (n + 2) * std::log(static_cast<double>(k)) - l * std::log(simplex.inscribed_diameter()));
  }
  rep.measured = measured;
  rep.bound = bound;
  rep.pass = measured <= bound * (1.0 + kCompareSlack);
  return rep;
}

double xi(int m, double p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("xi: h must be positive");
  if (m < 0) throw std::invalid_argument("xi: m must be >= 0");
  if (!(p > 0.0)) throw std::invalid_argument("xi: p must be positive");
  // (1 - h^{p(m+1)}) / (1 - h^p) = sum_{l=0}^{m} h^{pl}, which is also its value at h = 1.
  const double log_hp = p * std::log(h);
  const double top = log_hp > 0 ? m * log_hp : 0.0;
  double s = 0.0;
  for (int l = 0; l <= m; ++l) s += std::exp(l * log_hp - top);
  return std::exp((top + std::log(s)) / p);
}

double c1_constant(const ConstantBundle& b) {
  const double log_term = b.m * std::log(b.n * (b.n + 1) * b.sigma) + std::log(b.lambda_star()) + log_factorial(b.m) - log_factorial(b.n);
  return 1.0 + std::exp(log_term);
}

double c2_constant(int n) {
  if (n < 1) throw std::invalid_argument("c2_constant: n must be >= 1");
  return 1.0 + std::exp(-log_factorial(n));
}

double log_k_factor(int k, int m, int n, double p) {
  require_admissible(k, m, n, p);
  return n * std::log(static_cast<double>(k + n)) + m * (n + 2) * std::log(static_cast<double>(k)) - log_factorial(k - m) -
         std::log(k + 1 - m - n / p);
}

double log_script_C_k(const ConstantBundle& b) {
  b.validate();
  const double log_k = log_k_factor(b.k, b.m, b.n, b.p);
  const double log_c1 = log1p_exp(b.m * std::log(b.n * (b.n + 1) * b.sigma) + std::log(b.lambda_star()) + log_factorial(b.m) -
                                  log_factorial(b.n));
  const double log_c2 = std::log(c2_constant(b.n));
  return std::log(b.cea_ratio) + std::max(log_c1, log_c2) + std::log(xi(b.m, b.p, b.h_cap)) + log_k;
}

double script_C_k(const ConstantBundle& b) { return std::exp(log_script_C_k(b)); }

double local_interp_bound(const ConstantBundle& b, double u_seminorm, double h_K, int l) {
  b.validate();
  if (l < 0 || l > b.m) throw std::invalid_argument("local_interp_bound: need 0 <= l <= m");
  if (!(h_K > 0.0)) throw std::invalid_argument("local_interp_bound: h_K must be positive");
  if (!(u_seminorm >= 0.0)) throw std::invalid_argument("local_interp_bound: seminorm must be nonnegative");
  const double c = l == 0 ? c2_constant(b.n) : c1_constant(b);
  return c * std::exp(log_k_factor(b.k, b.m, b.n, b.p)) * u_seminorm * std::pow(h_K, b.k + 1 - l);
}

}  // namespace fem_accuracy
