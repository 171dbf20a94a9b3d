#pragma once

#include <Eigen/Core>

namespace survkit {

/// Adaptive moment estimation over a flat parameter vector, with the
/// conventional default momentum parameters and L2 weight decay folded
/// into the raw gradient (the torch convention, not decoupled decay).
class AdamOptimizer {
public:
  AdamOptimizer(Eigen::Index n_params, double lr, double weight_decay = 0.0,
                double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), wd_(weight_decay), beta1_(beta1), beta2_(beta2), eps_(eps),
        m_(Eigen::VectorXd::Zero(n_params)), v_(Eigen::VectorXd::Zero(n_params)) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
    ++t_;
    Eigen::VectorXd g = grad;
    if (wd_ != 0.0) g += wd_ * params;
    m_ = beta1_ * m_ + (1.0 - beta1_) * g;
    v_ = beta2_ * v_ + (1.0 - beta2_) * g.cwiseProduct(g);
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    params -= (lr_ / bc1) *
              (m_.array() / ((v_.array() / bc2).sqrt() + eps_)).matrix();
  }

private:
  double lr_, wd_, beta1_, beta2_, eps_;
  Eigen::VectorXd m_, v_;
  long t_ = 0;
};

} // namespace survkit
