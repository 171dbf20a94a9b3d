#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace survkit {

/// One point of the hyperparameter grid: l2 strength plus an optional
/// feature-selection budget (k < 0 means "no selection").
struct GridPoint {
  double l2 = 1.0;
  int k = -1;
};

/// Trains on (X_train, y_train) and returns scores for X_valid.
using FitScoreFn = std::function<Eigen::VectorXd(
    const Eigen::MatrixXd& X_train, std::span<const std::uint8_t> y_train,
    const Eigen::MatrixXd& X_valid, const GridPoint& params)>;

/// Deterministic label-stratified fold assignment (fold id per row).
std::vector<std::size_t> stratified_folds(std::span<const std::uint8_t> labels,
                                          std::size_t n_folds, std::uint64_t seed);

struct GridSearchResult {
  GridPoint best;
  double best_score = 0.0;           // mean validation AUROC
  std::vector<double> mean_scores;   // aligned with the grid
};

/// Grid search over stratified folds scored by mean validation AUROC.
/// Ties break toward stronger regularization (larger l2, then smaller k).
GridSearchResult grid_search_cv(const Eigen::MatrixXd& X,
                                std::span<const std::uint8_t> labels,
                                const std::vector<GridPoint>& grid,
                                const FitScoreFn& fit_score, std::size_t folds = 5,
                                std::uint64_t seed = 0);

} // namespace survkit
