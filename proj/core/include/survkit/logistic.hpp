#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace survkit {

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::vector<std::string> col_labels;
  double l2 = 0.0;
  bool class_weighted = false;
  int iterations = 0;
  double final_grad_norm = 0.0;

  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& X) const;
  double predict_proba_one(const Eigen::VectorXd& x) const;
};

/// Minimizes the L2-penalized (optionally inverse-class-frequency
/// weighted) cross-entropy by Newton iterations with step-halving to
/// gradient max-norm < 1e-7. The intercept is not penalized. Balanced
/// class weights are n / (2 * n_class), so they reduce to 1 on balanced
/// data.
LogisticModel logistic_fit(const Eigen::MatrixXd& X,
                           std::span<const std::uint8_t> labels, double l2,
                           bool class_weighted = false, double tol = 1e-7,
                           int max_iter = 100);

} // namespace survkit
