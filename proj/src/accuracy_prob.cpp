#include "fem_accuracy/accuracy_prob.hpp"

#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fem_accuracy {

namespace {

constexpr double kPairingTolerance = 1e-12;

// h* = exp((F(k1) - F(k2) + log seminorm ratio + log cea ratio) / (k2 - k1)) with F = log_k_factor.
double log_h_star_orders(int n, int m, double p, int k1, int k2, double log_seminorm_ratio, double log_cea_ratio) {
  return (log_cea_ratio + log_k_factor(k1, m, n, p) - log_k_factor(k2, m, n, p) + log_seminorm_ratio) / (k2 - k1);
}

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be a finite positive number");
  return v;
}

}  // namespace

void ElementPair::validate() const {
  if (!(k1 < k2)) throw std::invalid_argument("ElementPair: need k1 < k2");
  require_positive(c_k1, "C_k1");
  require_positive(c_k2, "C_k2");
}

double h_star(const ElementPair& pair) {
  pair.validate();
  // Taking the ratio first keeps h* unchanged when both constants are scaled
  // by a power of two; fall back to a difference of logs on over/underflow.
  const double ratio = pair.c_k1 / pair.c_k2;
  const double log_ratio = std::isnormal(ratio) ? std::log(ratio) : std::log(pair.c_k1) - std::log(pair.c_k2);
  return std::exp(log_ratio / (pair.k2 - pair.k1));
}

AccuracyLaw make_law(const ElementPair& pair, LawKind kind) { return {h_star(pair), pair.k2 - pair.k1, kind}; }

double h_star_explicit(const ExplicitHStarInput& in) {
  if (!(in.k1 < in.k2)) throw std::invalid_argument("h_star_explicit: need k1 < k2");
  require_admissible(in.k1, in.m, in.n, in.p);
  require_admissible(in.k2, in.m, in.n, in.p);
  require_positive(in.seminorm_ratio, "seminorm ratio");
  require_positive(in.cea_ratio_k1, "cea ratio");
  require_positive(in.cea_ratio_k2, "cea ratio");
  return std::exp(log_h_star_orders(in.n, in.m, in.p, in.k1, in.k2, std::log(in.seminorm_ratio),
                                    std::log(in.cea_ratio_k1) - std::log(in.cea_ratio_k2)));
}

double prob_law(const AccuracyLaw& law, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("prob_law: h must be positive");
  require_positive(law.h_star, "h*");
  if (law.exponent < 1) throw std::invalid_argument("prob_law: exponent must be >= 1");
  if (law.kind == LawKind::heaviside) {
    if (h < law.h_star) return 1.0;
    if (h > law.h_star) return 0.0;
    return 0.5;
  }
  if (h <= law.h_star) return 1.0 - 0.5 * std::pow(h / law.h_star, law.exponent);
  return 0.5 * std::pow(law.h_star / h, law.exponent);
}

std::vector<std::pair<double, double>> law_curve(const AccuracyLaw& law, double h_min, double h_max, int steps) {
  if (steps < 1) throw std::invalid_argument("law_curve: steps must be >= 1");
  if (!(h_min > 0.0) || !(h_max >= h_min)) throw std::invalid_argument("law_curve: need 0 < hmin <= hmax");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double h = steps == 1 ? h_min : h_min + (h_max - h_min) * i / (steps - 1);
    out.emplace_back(h, prob_law(law, h));
  }
  return out;
}

SeminormModel sine_model(double p) {
  require_positive(p, "p");
  // int_0^1 |sin(pi x)|^p dx = Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2 + 1)), the same for cos.
  const double log_trig = (std::lgamma((p + 1.0) / 2.0) - 0.5 * std::log(std::numbers::pi) - std::lgamma(p / 2.0 + 1.0)) / p;
  SeminormModel m;
  m.name = "sin";
  m.p = p;
  m.log_seminorm = [log_trig](int r) { return r * std::log(std::numbers::pi) + log_trig; };
  m.ratio_limit = std::numbers::pi;
  return m;
}

SeminormModel exp_model(double p) {
  require_positive(p, "p");
  const double log_norm = std::log(std::expm1(p) / p) / p;
  SeminormModel m;
  m.name = "exp";
  m.p = p;
  m.log_seminorm = [log_norm](int) { return log_norm; };
  m.ratio_limit = 1.0;
  return m;
}

SeminormModel model_by_name(const std::string& name, double p) {
  if (name == "sin") return sine_model(p);
  if (name == "exp") return exp_model(p);
  throw std::invalid_argument("unknown seminorm model '" + name + "' (expected sin or exp)");
}

CeaSequence constant_cea(double ratio) {
  require_positive(ratio, "cea ratio");
  return [ratio](int) { return ratio; };
}

std::vector<HStarRow> h_star_sequence(int k, int n, int m, double p, int q_max, const SeminormModel& model,
                                      const CeaSequence& cea) {
  if (q_max < 1) throw std::invalid_argument("h_star_sequence: q_max must be >= 1");
  if (model.p != p) throw std::invalid_argument("h_star_sequence: model exponent differs from p");
  require_admissible(k, m, n, p);
  const double log_cea_k = std::log(require_positive(cea(0), "cea ratio"));
  const double log_u_k = model.log_seminorm(k + 1);
  std::vector<HStarRow> rows;
  rows.reserve(static_cast<std::size_t>(q_max));
  for (int q = 1; q <= q_max; ++q) {
    const double log_cea = log_cea_k - std::log(require_positive(cea(q), "cea ratio"));
    const double log_h = log_h_star_orders(n, m, p, k, k + q, log_u_k - model.log_seminorm(k + q + 1), log_cea);
    const double h = std::exp(log_h);
    rows.push_back({q, h, h / q});
  }
  return rows;
}

TestFunction bump(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("bump: need a < b");
  TestFunction phi;
  phi.name = "bump";
  phi.support = {a, b};
  phi.fn = [a, b](double h) {
    const double t = (2.0 * h - a - b) / (b - a);
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  return phi;
}

TestFunction zero_function(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("zero_function: need a < b");
  TestFunction phi;
  phi.name = "zero";
  phi.support = {a, b};
  phi.fn = [](double) { return 0.0; };
  return phi;
}

WeakStarReport weak_star_test(int k, int n, int m, double p, const std::vector<int>& q_list, const SeminormModel& model,
                              const TestFunction& phi, const CeaSequence& cea) {
  if (!phi.support) throw std::invalid_argument("weak_star_test: test function has no declared support");
  if (!phi.fn) throw std::invalid_argument("weak_star_test: empty test function");
  const auto [a, b] = *phi.support;
  if (!(a < b)) throw std::invalid_argument("weak_star_test: empty support");
  int q_max = 1;
  for (int q : q_list) {
    if (q < 1) throw std::invalid_argument("weak_star_test: q must be >= 1");
    q_max = std::max(q_max, q);
  }
  const auto seq = h_star_sequence(k, n, m, p, q_max, model, cea);

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto integrate = [](const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    return GK::integrate(f, lo, hi, 15, kPairingTolerance);
  };

  // P_q and H both vanish for h < 0.
  const double lo = std::max(a, 0.0);
  WeakStarReport rep;
  rep.limit = integrate(phi.fn, lo, b);
  for (int q : q_list) {
    const double hs = seq[static_cast<std::size_t>(q - 1)].h_star;
    const double split = std::clamp(hs, lo, std::max(lo, b));
    const double below = integrate([&](double h) { return -0.5 * std::pow(h / hs, q) * phi.fn(h); }, lo, split);
    const double above = integrate([&](double h) { return (0.5 * std::pow(hs / h, q) - 1.0) * phi.fn(h); }, split, b);
    const double deviation = below + above;
    rep.rows.push_back({q, hs, rep.limit + deviation, std::abs(deviation)});
  }
  return rep;
}

}  // namespace fem_accuracy
