#include "fem_accuracy/numeric.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fem_accuracy {

namespace {

void compose(int parts, int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const int pos = static_cast<int>(current.size());
  if (pos == parts - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current.push_back(v);
    compose(parts, remaining - v, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> compositions(int parts, int total) {
  if (parts < 1 || total < 0) throw std::invalid_argument("compositions: need parts >= 1 and total >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  current.reserve(static_cast<std::size_t>(parts));
  compose(parts, total, current, out);
  return out;
}

std::size_t simplex_lattice_size(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("simplex_lattice_size: negative argument");
  // C(n+k, n) computed incrementally; each partial product is itself a binomial.
  unsigned __int128 acc = 1;
  const int small = std::min(n, k);
  const int big = std::max(n, k);
  for (int i = 1; i <= small; ++i) {
    acc = acc * static_cast<unsigned>(big + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      throw std::overflow_error("basis size C(n+k, n) overflows for n=" + std::to_string(n) +
                                ", k=" + std::to_string(k));
    }
  }
  return static_cast<std::size_t>(acc);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FEM_ACCURACY_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need two or more paired samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::domain_error("log_log_slope: samples must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fem_accuracy
