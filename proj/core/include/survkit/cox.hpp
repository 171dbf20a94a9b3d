#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace survkit {

struct CoxModel {
  Eigen::VectorXd beta;
  std::vector<std::string> col_labels;
  double l2 = 0.0;
  int iterations = 0;
  double final_grad_norm = 0.0;
  /// Negative penalized partial log-likelihood after each Newton step
  /// (step-halved steps never increase it).
  std::vector<double> nll_path;
  /// Inverse observed information at the solution (unpenalized when
  /// l2 = 0); used for Wald standard errors.
  Eigen::MatrixXd covariance;

  Eigen::VectorXd linear_predictor(const Eigen::MatrixXd& X) const;
};

/// Maximizes the L2-penalized Cox partial likelihood with Breslow tie
/// handling via Newton iterations with step-halving; converges when
/// max |gradient| < tol or after max_iter iterations (Diverged if the
/// gradient is still above tolerance then). Singular Hessians fall back
/// to a small ridge jitter; a persistently singular problem without
/// penalty throws Singular.
CoxModel cox_fit(const Eigen::MatrixXd& X, std::span<const double> time,
                 std::span<const std::uint8_t> event, double l2 = 0.0,
                 double tol = 1e-7, int max_iter = 100);

/// Negative penalized Breslow partial log-likelihood (exposed for the
/// grid-search oracle tests).
double cox_negative_log_likelihood(const Eigen::MatrixXd& X,
                                   std::span<const double> time,
                                   std::span<const std::uint8_t> event,
                                   const Eigen::VectorXd& beta, double l2 = 0.0);

struct HazardRatio {
  double hr = 1.0;
  double p = 1.0;
  double log_hr_se = 0.0;
};

/// hr = exp(beta) from a univariate Cox fit on the group indicator
/// (1 = second group); p is a two-sided Wald test with the
/// observed-information standard error.
HazardRatio hazard_ratio(std::span<const std::uint8_t> groups,
                         std::span<const double> time,
                         std::span<const std::uint8_t> event);

/// Breslow baseline cumulative hazard at the distinct event times of the
/// training data; lets a Cox model emit absolute survival probabilities.
struct BreslowBaseline {
  std::vector<double> times;       // ascending distinct event times
  std::vector<double> cum_hazard;  // Lambda0 at those times

  double cumulative_hazard(double t) const;
  /// S(t | x) = exp(-Lambda0(t) * exp(eta))
  double survival(double t, double eta) const;
};

BreslowBaseline breslow_baseline(const Eigen::MatrixXd& X, std::span<const double> time,
                                 std::span<const std::uint8_t> event,
                                 const CoxModel& model);

} // namespace survkit
