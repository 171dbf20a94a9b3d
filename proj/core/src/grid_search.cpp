#include "survkit/grid_search.hpp"

#include "survkit/error.hpp"
#include "survkit/metrics.hpp"
#include "survkit/rng.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace survkit {

std::vector<std::size_t> stratified_folds(std::span<const std::uint8_t> labels,
                                          std::size_t n_folds, std::uint64_t seed) {
  if (n_folds < 2) throw InvalidConfigError("need at least 2 folds");
  std::vector<std::size_t> fold(labels.size());
  auto rng = rng_stream(seed, 7);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if ((labels[i] != 0) == (cls == 1)) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t j = 0; j < members.size(); ++j) fold[members[j]] = j % n_folds;
  }
  return fold;
}

GridSearchResult grid_search_cv(const Eigen::MatrixXd& X,
                                std::span<const std::uint8_t> labels,
                                const std::vector<GridPoint>& grid,
                                const FitScoreFn& fit_score, std::size_t folds,
                                std::uint64_t seed) {
  if (grid.empty()) throw InvalidConfigError("empty hyperparameter grid");
  const auto n = static_cast<std::size_t>(X.rows());
  if (n != labels.size()) throw ShapeMismatchError("X/labels size mismatch");

  const auto fold = stratified_folds(labels, folds, seed);

  GridSearchResult result;
  result.mean_scores.resize(grid.size(), 0.0);

  for (std::size_t g = 0; g < grid.size(); ++g) {
    double total = 0.0;
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<std::size_t> tr, va;
      for (std::size_t i = 0; i < n; ++i) (fold[i] == f ? va : tr).push_back(i);
      if (tr.empty() || va.empty())
        throw InvalidConfigError("fold " + std::to_string(f) + " is empty");

      Eigen::MatrixXd Xtr(static_cast<Eigen::Index>(tr.size()), X.cols());
      Eigen::MatrixXd Xva(static_cast<Eigen::Index>(va.size()), X.cols());
      std::vector<std::uint8_t> ytr, yva;
      for (std::size_t i = 0; i < tr.size(); ++i) {
        Xtr.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(tr[i]));
        ytr.push_back(labels[tr[i]]);
      }
      for (std::size_t i = 0; i < va.size(); ++i) {
        Xva.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(va[i]));
        yva.push_back(labels[va[i]]);
      }

      const Eigen::VectorXd scores = fit_score(Xtr, ytr, Xva, grid[g]);
      std::vector<double> s(scores.data(), scores.data() + scores.size());
      total += auroc(s, yva);
    }
    result.mean_scores[g] = total / static_cast<double>(folds);
  }

  // argmax with ties toward stronger regularization: larger l2, then
  // smaller k (fewer selected features), then grid order
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double diff = result.mean_scores[g] - result.mean_scores[best];
    if (diff > 0.0) {
      best = g;
    } else if (diff == 0.0) {
      if (grid[g].l2 > grid[best].l2 ||
          (grid[g].l2 == grid[best].l2 && grid[g].k >= 0 && grid[best].k >= 0 &&
           grid[g].k < grid[best].k))
        best = g;
    }
  }
  result.best = grid[best];
  result.best_score = result.mean_scores[best];
  return result;
}

} // namespace survkit
