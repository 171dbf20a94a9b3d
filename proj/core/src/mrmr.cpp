#include "survkit/mrmr.hpp"

#include "survkit/error.hpp"
#include "survkit/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace survkit {

std::vector<int> quartile_codes(std::span<const double> x) {
  std::vector<double> copy(x.begin(), x.end());
  std::vector<double> edges;
  for (double p : {0.25, 0.5, 0.75}) edges.push_back(quantile_type7(copy, p));
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<int> codes;
  codes.reserve(x.size());
  for (double v : x) {
    int c = 0;
    for (double e : edges)
      if (v > e) ++c;
    codes.push_back(c);
  }
  return codes;
}

namespace {

double mi_of_codes(std::span<const int> a, std::span<const int> b, std::size_t na,
                   std::size_t nb) {
  const auto n = static_cast<double>(a.size());
  std::vector<double> joint(na * nb, 0.0), pa(na, 0.0), pb(nb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[static_cast<std::size_t>(a[i]) * nb + static_cast<std::size_t>(b[i])] += 1.0;
    pa[static_cast<std::size_t>(a[i])] += 1.0;
    pb[static_cast<std::size_t>(b[i])] += 1.0;
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const double pij = joint[i * nb + j] / n;
      if (pij <= 0.0) continue;
      mi += pij * std::log(pij * n * n / (pa[i] * pb[j]));
    }
  }
  return std::max(mi, 0.0);
}

} // namespace

double mutual_information_binned(std::span<const double> x, std::span<const int> y_codes,
                                 std::size_t n_codes) {
  if (x.size() != y_codes.size()) throw ShapeMismatchError("MI input size mismatch");
  const auto codes = quartile_codes(x);
  return mi_of_codes(codes, y_codes, 4, n_codes);
}

std::vector<std::size_t> mrmr_select(const Eigen::MatrixXd& X,
                                     std::span<const std::uint8_t> labels,
                                     std::size_t k) {
  const auto d = static_cast<std::size_t>(X.cols());
  const auto n = static_cast<std::size_t>(X.rows());
  if (n != labels.size()) throw ShapeMismatchError("X/labels size mismatch");
  if (k == 0 || k > d) throw BadKError("k must lie in [1, " + std::to_string(d) + "]");

  std::vector<int> y_codes(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y_codes[i] = labels[i] ? 1 : 0;

  std::vector<std::vector<int>> codes(d);
  std::vector<double> relevance(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i)
      col[i] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    codes[j] = quartile_codes(col);
    relevance[j] = mi_of_codes(codes[j], y_codes, 4, 2);
  }

  std::vector<std::size_t> selected;
  std::vector<bool> used(d, false);
  std::vector<double> redundancy_sum(d, 0.0);

  while (selected.size() < k) {
    std::size_t best = d;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      const double score =
          selected.empty()
              ? relevance[j]
              : relevance[j] - redundancy_sum[j] / static_cast<double>(selected.size());
      if (score > best_score) { // strict: ties keep the lower index
        best_score = score;
        best = j;
      }
    }
    used[best] = true;
    selected.push_back(best);
    for (std::size_t j = 0; j < d; ++j)
      if (!used[j]) redundancy_sum[j] += mi_of_codes(codes[j], codes[best], 4, 4);
  }
  return selected;
}

} // namespace survkit
