#include "survkit/stats_util.hpp"

#include "survkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace survkit {

double mean(std::span<const double> x) {
  if (x.empty()) throw EmptyInputError();
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) throw EmptyInputError();
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile_type7(std::vector<double> x, double p) {
  if (x.empty()) throw EmptyInputError();
  std::sort(x.begin(), x.end());
  if (p <= 0.0) return x.front();
  if (p >= 1.0) return x.back();
  const double h = p * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= x.size()) return x.back();
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

std::vector<double> midranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    // tie group [i, j]: average of 1-based ranks i+1 .. j+1
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace survkit
