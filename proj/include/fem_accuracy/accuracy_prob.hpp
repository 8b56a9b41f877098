#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fem_accuracy {

/// Composite constants C_ki = script_C_ki * |u|_{ki+1,p} of two element orders.
struct ElementPair {
  int k1 = 1;
  int k2 = 2;
  double c_k1 = 1.0;
  double c_k2 = 1.0;

  /// Throws std::invalid_argument unless k1 < k2 and both constants are positive.
  void validate() const;
};

enum class LawKind { nonlinear, heaviside };

struct AccuracyLaw {
  double h_star = 1.0;
  int exponent = 1;  // k2 - k1
  LawKind kind = LawKind::nonlinear;
};

/// (C_k1 / C_k2)^{1/(k2-k1)}
double h_star(const ElementPair& pair);
AccuracyLaw make_law(const ElementPair& pair, LawKind kind = LawKind::nonlinear);

struct ExplicitHStarInput {
  int n = 1;
  int m = 0;
  double p = 2.0;
  int k1 = 1;
  int k2 = 2;
  /// |u|_{k1+1,p} / |u|_{k2+1,p}
  double seminorm_ratio = 1.0;
  /// 1 + ||a|| / alpha_h for each order.
  double cea_ratio_k1 = 1.0;
  double cea_ratio_k2 = 1.0;
};

/// h* written out through the k-dependent factors of the error constant.
/// Throws AdmissibilityError if either order is inadmissible.
double h_star_explicit(const ExplicitHStarInput& in);

/// Probability that P_k2 is at least as accurate as P_k1 at mesh size h.
/// The Heaviside law takes the value 1/2 at h = h*.
double prob_law(const AccuracyLaw& law, double h);

/// Uniform grid of `steps` points on [h_min, h_max] with law values.
std::vector<std::pair<double, double>> law_curve(const AccuracyLaw& law, double h_min, double h_max, int steps);

/// log |u|_{r,p,(0,1)} as a function of r for a fixed analytic u.
struct SeminormModel {
  std::string name;
  double p = 2.0;
  std::function<double(int)> log_seminorm;
  /// lim_r |u|_{r+1,p} / |u|_{r,p}
  double ratio_limit = 1.0;
};

/// u = sin(pi x): |u|_{r,p} = pi^r ||sin(pi .)||_{L^p(0,1)}, ratio pi.
SeminormModel sine_model(double p);
/// u = exp(x): |u|_{r,p} = ((e^p - 1)/p)^{1/p} for every r, ratio 1.
SeminormModel exp_model(double p);
/// "sin" or "exp"; throws std::invalid_argument otherwise.
SeminormModel model_by_name(const std::string& name, double p);

/// (1 + ||a|| / alpha_{h,k+q}) as a function of q >= 0.
using CeaSequence = std::function<double(int)>;
CeaSequence constant_cea(double ratio = 1.0);

struct HStarRow {
  int q = 0;
  double h_star = 0.0;
  double h_star_over_q = 0.0;
};

/// h*_q comparing P_k with P_{k+q}, q = 1..q_max, evaluated in log space.
std::vector<HStarRow> h_star_sequence(int k, int n, int m, double p, int q_max, const SeminormModel& model,
                                      const CeaSequence& cea = constant_cea());

/// Compactly supported test function on [a, b].
struct TestFunction {
  std::string name;
  std::optional<std::pair<double, double>> support;
  std::function<double(double)> fn;
};

/// exp(-1/(1-t^2)) with t mapping [a, b] onto [-1, 1].
TestFunction bump(double a = 1.0, double b = 2.0);
TestFunction zero_function(double a = 1.0, double b = 2.0);

struct WeakStarRow {
  int q = 0;
  double h_star = 0.0;
  double pairing = 0.0;  // <T_{P_q}, phi>
  double error = 0.0;    // |<T_{P_q}, phi> - <T_H, phi>|
};

struct WeakStarReport {
  double limit = 0.0;  // <T_H, phi> = int_0^inf phi
  std::vector<WeakStarRow> rows;
};

/// Pairings of the nonlinear law P_q (zero for h <= 0) with phi. The
/// deviation from the Heaviside pairing is integrated directly, by adaptive
/// Gauss-Kronrod on the support split at 0 and h*_q.
WeakStarReport weak_star_test(int k, int n, int m, double p, const std::vector<int>& q_list, const SeminormModel& model,
                              const TestFunction& phi, const CeaSequence& cea = constant_cea());

}  // namespace fem_accuracy
