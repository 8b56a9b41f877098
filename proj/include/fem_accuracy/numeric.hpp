#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace fem_accuracy {

/// Neumaier (improved Kahan) summation. Order-dependent only at the
/// level of the compensated residual.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// log(n!) via lgamma.
inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// log(1 + e^x) without overflow.
inline double log1p_exp(double x) { return x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

/// All tuples of `parts` nonnegative integers summing to `total`, in
/// lexicographic descending order, e.g. (2,0),(1,1),(0,2).
std::vector<std::vector<int>> compositions(int parts, int total);

/// Binomial coefficient C(n+k, n); throws std::overflow_error when the
/// result does not fit in 63 bits.
std::size_t simplex_lattice_size(int n, int k);

/// Worker count for element-parallel loops. Honors FEM_ACCURACY_THREADS.
unsigned worker_count();

/// Evaluates fn(i) for i in [0, count) and returns the results in index
/// order, so any reduction performed afterwards is independent of the
/// thread count.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const unsigned workers = worker_count();
  if (workers <= 1 || count < 32) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace fem_accuracy
