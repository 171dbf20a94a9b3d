#include "survkit/logistic.hpp"

#include "survkit/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace survkit {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

} // namespace

Eigen::VectorXd LogisticModel::predict_proba(const Eigen::MatrixXd& X) const {
  if (X.cols() != weights.size())
    throw ShapeMismatchError("design matrix has wrong column count");
  Eigen::VectorXd eta = X * weights;
  eta.array() += bias;
  return eta.unaryExpr([](double z) { return sigmoid(z); });
}

double LogisticModel::predict_proba_one(const Eigen::VectorXd& x) const {
  if (x.size() != weights.size()) throw ShapeMismatchError("feature vector size mismatch");
  return sigmoid(weights.dot(x) + bias);
}

LogisticModel logistic_fit(const Eigen::MatrixXd& X, std::span<const std::uint8_t> labels,
                           double l2, bool class_weighted, double tol, int max_iter) {
  const auto n = static_cast<std::size_t>(X.rows());
  if (n != labels.size()) throw ShapeMismatchError("X/labels size mismatch");
  if (l2 < 0.0) throw InvalidConfigError("l2 must be >= 0");

  std::size_t n_pos = 0;
  for (auto y : labels) n_pos += y ? 1 : 0;
  if (n_pos == 0 || n_pos == n) throw OneClassOnlyError();

  Eigen::VectorXd sample_weight(static_cast<Eigen::Index>(n));
  if (class_weighted) {
    const double w_pos = static_cast<double>(n) / (2.0 * static_cast<double>(n_pos));
    const double w_neg = static_cast<double>(n) / (2.0 * static_cast<double>(n - n_pos));
    for (std::size_t i = 0; i < n; ++i)
      sample_weight(static_cast<Eigen::Index>(i)) = labels[i] ? w_pos : w_neg;
  } else {
    sample_weight.setOnes();
  }

  const Eigen::Index d = X.cols();
  LogisticModel model;
  model.l2 = l2;
  model.class_weighted = class_weighted;
  model.weights = Eigen::VectorXd::Zero(d);

  auto objective = [&](const Eigen::VectorXd& w, double b) {
    double obj = 0.5 * l2 * w.squaredNorm();
    const Eigen::VectorXd eta = (X * w).array() + b;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = eta(static_cast<Eigen::Index>(i));
      // CE = softplus(z) - y z
      obj += sample_weight(static_cast<Eigen::Index>(i)) *
             (softplus(z) - (labels[i] ? z : 0.0));
    }
    return obj;
  };

  double obj = objective(model.weights, model.bias);
  bool converged = false;

  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::VectorXd eta = (X * model.weights).array() + model.bias;
    Eigen::VectorXd mu = eta.unaryExpr([](double z) { return sigmoid(z); });

    Eigen::VectorXd resid = mu;
    for (std::size_t i = 0; i < n; ++i)
      resid(static_cast<Eigen::Index>(i)) -= labels[i] ? 1.0 : 0.0;
    resid = resid.cwiseProduct(sample_weight);

    Eigen::VectorXd grad(d + 1);
    grad.head(d) = X.transpose() * resid + l2 * model.weights;
    grad(d) = resid.sum();

    model.final_grad_norm = grad.cwiseAbs().maxCoeff();
    model.iterations = iter;
    if (model.final_grad_norm < tol) {
      converged = true;
      break;
    }

    const Eigen::VectorXd s =
        mu.array() * (1.0 - mu.array()) * sample_weight.array();
    Eigen::MatrixXd hess(d + 1, d + 1);
    hess.topLeftCorner(d, d) = X.transpose() * s.asDiagonal() * X +
                               l2 * Eigen::MatrixXd::Identity(d, d);
    hess.topRightCorner(d, 1) = X.transpose() * s;
    hess.bottomLeftCorner(1, d) = (X.transpose() * s).transpose();
    hess(d, d) = s.sum();

    Eigen::VectorXd step;
    double jitter = 0.0;
    const double scale = std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0;; ++attempt) {
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      step = ldlt.solve(grad);
      if (step.allFinite() && (hess * step - grad).cwiseAbs().maxCoeff() <
                                  1e-8 * (1.0 + grad.cwiseAbs().maxCoeff()))
        break;
      if (attempt >= 12) throw DivergedError("logistic Newton system unsolvable");
      jitter = jitter == 0.0 ? 1e-10 * scale : jitter * 10.0;
      hess += jitter * Eigen::MatrixXd::Identity(d + 1, d + 1);
    }

    double step_scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd w_new = model.weights - step_scale * step.head(d);
      const double b_new = model.bias - step_scale * step(d);
      const double obj_new = objective(w_new, b_new);
      if (std::isfinite(obj_new) && obj_new <= obj) {
        model.weights = w_new;
        model.bias = b_new;
        obj = obj_new;
        improved = true;
        break;
      }
      step_scale *= 0.5;
    }
    if (!improved) break;

    if (model.weights.cwiseAbs().maxCoeff() > 1e4 || std::abs(model.bias) > 1e4)
      throw DivergedError("logistic coefficients diverged");
  }

  if (!converged) {
    // re-check: the last step may have landed within tolerance
    const Eigen::VectorXd eta = (X * model.weights).array() + model.bias;
    Eigen::VectorXd mu = eta.unaryExpr([](double z) { return sigmoid(z); });
    Eigen::VectorXd resid = mu;
    for (std::size_t i = 0; i < n; ++i)
      resid(static_cast<Eigen::Index>(i)) -= labels[i] ? 1.0 : 0.0;
    resid = resid.cwiseProduct(sample_weight);
    Eigen::VectorXd grad(d + 1);
    grad.head(d) = X.transpose() * resid + l2 * model.weights;
    grad(d) = resid.sum();
    model.final_grad_norm = grad.cwiseAbs().maxCoeff();
    if (model.final_grad_norm >= tol)
      throw DivergedError("logistic regression did not converge (max |grad| = " +
                          std::to_string(model.final_grad_norm) + ")");
  }
  return model;
}

} // namespace survkit
