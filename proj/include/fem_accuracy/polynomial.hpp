#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fem_accuracy {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double r) { return r; }

/// Sparse multivariate polynomial. Exponent vectors are keys; zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
template <class Coeff>
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Coeff>;

  explicit Polynomial(int num_vars = 1) : num_vars_(num_vars) {
    if (num_vars < 1) throw std::invalid_argument("Polynomial: need at least one variable");
  }

  static Polynomial constant(int num_vars, const Coeff& c) {
    Polynomial p(num_vars);
    p.add_term(Exponents(static_cast<std::size_t>(num_vars), 0), c);
    return p;
  }

  /// The monomial x_var.
  static Polynomial variable(int num_vars, int var) {
    Polynomial p(num_vars);
    Exponents e(static_cast<std::size_t>(num_vars), 0);
    e.at(static_cast<std::size_t>(var)) = 1;
    p.add_term(std::move(e), Coeff(1));
    return p;
  }

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
  }

  void add_term(Exponents e, const Coeff& c) {
    if (static_cast<int>(e.size()) != num_vars_) throw std::invalid_argument("Polynomial: exponent arity mismatch");
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (s == Coeff(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial r(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// d/dx_var
  Polynomial derivative(int var) const {
    if (var < 0 || var >= num_vars_) throw std::out_of_range("Polynomial::derivative: variable index");
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
      const int pw = e[static_cast<std::size_t>(var)];
      if (pw == 0) continue;
      Exponents d(e);
      d[static_cast<std::size_t>(var)] = pw - 1;
      r.add_term(std::move(d), c * Coeff(pw));
    }
    return r;
  }

  /// Mixed derivative; order[v] is the number of differentiations in x_v.
  Polynomial derivative(std::span<const int> order) const {
    if (static_cast<int>(order.size()) != num_vars_) throw std::invalid_argument("Polynomial::derivative: order arity mismatch");
    Polynomial r = *this;
    for (int v = 0; v < num_vars_; ++v) {
      for (int t = 0; t < order[static_cast<std::size_t>(v)]; ++t) r = r.derivative(v);
    }
    return r;
  }

  /// Re-embeds a polynomial into `num_vars` variables with each old
  /// variable i mapped to new variable target[i].
  Polynomial embed(int num_vars, std::span<const int> target) const {
    if (static_cast<int>(target.size()) != num_vars_) throw std::invalid_argument("Polynomial::embed: target arity mismatch");
    Polynomial r(num_vars);
    for (const auto& [e, c] : terms_) {
      Exponents d(static_cast<std::size_t>(num_vars), 0);
      for (std::size_t i = 0; i < e.size(); ++i) d.at(static_cast<std::size_t>(target[i])) += e[i];
      r.add_term(std::move(d), c);
    }
    return r;
  }

  double eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != num_vars_) throw std::invalid_argument("Polynomial::eval: point arity mismatch");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int pw = 0; pw < e[i]; ++pw) t *= x[i];
      }
      s += t;
    }
    return s;
  }

  /// Evaluation in the coefficient field itself (exact for Rational).
  Coeff eval_exact(std::span<const Coeff> x) const {
    if (static_cast<int>(x.size()) != num_vars_) throw std::invalid_argument("Polynomial::eval_exact: point arity mismatch");
    Coeff s(0);
    for (const auto& [e, c] : terms_) {
      Coeff t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int pw = 0; pw < e[i]; ++pw) t *= x[i];
      }
      s += t;
    }
    return s;
  }

  template <class Other>
  Polynomial<Other> convert() const {
    Polynomial<Other> r(num_vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, static_cast<Other>(to_double(c)));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += coeff_string(it->second);
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        out += "*l" + std::to_string(i + 1);
        if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
      }
    }
    return out;
  }

 private:
  static std::string coeff_string(const Rational& c) { return c.str(); }
  static std::string coeff_string(double c) { return std::to_string(c); }

  void check_arity(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  }

  int num_vars_;
  Terms terms_;
};

using ExactPolynomial = Polynomial<Rational>;
using RealPolynomial = Polynomial<double>;

}  // namespace fem_accuracy
