#include "survkit/cox.hpp"

#include "survkit/error.hpp"
#include "survkit/stats_util.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace survkit {

namespace {

struct SortedSurvival {
  std::vector<std::size_t> order; // descending time
  std::size_t n_events = 0;
};

SortedSurvival sort_descending(std::span<const double> time,
                               std::span<const std::uint8_t> event) {
  SortedSurvival s;
  s.order.resize(time.size());
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  std::sort(s.order.begin(), s.order.end(),
            [&](std::size_t a, std::size_t b) { return time[a] > time[b]; });
  for (auto e : event) s.n_events += e ? 1 : 0;
  return s;
}

/// Breslow partial likelihood sweep. Accumulates nll, gradient and
/// Hessian of the *negative* log likelihood (without penalty).
struct SweepResult {
  double nll = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

SweepResult breslow_sweep(const Eigen::MatrixXd& X, std::span<const double> time,
                          std::span<const std::uint8_t> event,
                          const Eigen::VectorXd& beta, bool with_derivatives) {
  const auto n = static_cast<std::size_t>(X.rows());
  const auto d = static_cast<Eigen::Index>(X.cols());
  const auto sorted = sort_descending(time, event);

  Eigen::VectorXd eta = X * beta;
  const double eta_max = eta.size() > 0 ? eta.maxCoeff() : 0.0;

  SweepResult res;
  if (with_derivatives) {
    res.grad = Eigen::VectorXd::Zero(d);
    res.hess = Eigen::MatrixXd::Zero(d, d);
  }

  double s0 = 0.0;
  Eigen::VectorXd s1 = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd s2 = with_derivatives ? Eigen::MatrixXd::Zero(d, d) : Eigen::MatrixXd();

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && time[sorted.order[j]] == time[sorted.order[i]]) {
      const std::size_t idx = sorted.order[j];
      const double w = std::exp(eta(static_cast<Eigen::Index>(idx)) - eta_max);
      s0 += w;
      if (with_derivatives) {
        s1.noalias() += w * X.row(static_cast<Eigen::Index>(idx)).transpose();
        s2.noalias() += w * X.row(static_cast<Eigen::Index>(idx)).transpose() *
                        X.row(static_cast<Eigen::Index>(idx));
      }
      ++j;
    }
    // risk set now holds everyone with time >= current tie group's time
    std::size_t deaths = 0;
    for (std::size_t k = i; k < j; ++k) {
      const std::size_t idx = sorted.order[k];
      if (!event[idx]) continue;
      ++deaths;
      res.nll -= eta(static_cast<Eigen::Index>(idx)) - eta_max;
      if (with_derivatives)
        res.grad.noalias() -= X.row(static_cast<Eigen::Index>(idx)).transpose();
    }
    if (deaths > 0) {
      res.nll += static_cast<double>(deaths) * std::log(s0);
      if (with_derivatives) {
        const Eigen::VectorXd xbar = s1 / s0;
        res.grad.noalias() += static_cast<double>(deaths) * xbar;
        res.hess.noalias() +=
            static_cast<double>(deaths) * (s2 / s0 - xbar * xbar.transpose());
      }
    }
    i = j;
  }
  return res;
}

Eigen::MatrixXd robust_inverse(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd a = m;
  const double scale = std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
  double jitter = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    Eigen::MatrixXd inv =
        ldlt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
    if (inv.allFinite() && (a * inv - Eigen::MatrixXd::Identity(a.rows(), a.cols()))
                                   .cwiseAbs()
                                   .maxCoeff() < 1e-6)
      return inv;
    jitter = jitter == 0.0 ? 1e-10 * scale : jitter * 10.0;
    a = m + jitter * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  }
  throw SingularError("observed information is numerically singular");
}

} // namespace

Eigen::VectorXd CoxModel::linear_predictor(const Eigen::MatrixXd& X) const {
  if (X.cols() != beta.size())
    throw ShapeMismatchError("design matrix has wrong column count");
  return X * beta;
}

double cox_negative_log_likelihood(const Eigen::MatrixXd& X,
                                   std::span<const double> time,
                                   std::span<const std::uint8_t> event,
                                   const Eigen::VectorXd& beta, double l2) {
  const auto res = breslow_sweep(X, time, event, beta, false);
  return res.nll + 0.5 * l2 * beta.squaredNorm();
}

CoxModel cox_fit(const Eigen::MatrixXd& X, std::span<const double> time,
                 std::span<const std::uint8_t> event, double l2, double tol,
                 int max_iter) {
  if (static_cast<std::size_t>(X.rows()) != time.size() || time.size() != event.size())
    throw ShapeMismatchError("X/time/event size mismatch");
  if (l2 < 0.0) throw InvalidConfigError("l2 must be >= 0");
  if (std::none_of(event.begin(), event.end(), [](std::uint8_t e) { return e != 0; }))
    throw NoEventsError();

  if (l2 == 0.0) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      const double span = X.col(c).maxCoeff() - X.col(c).minCoeff();
      if (span == 0.0)
        throw SingularError("constant column (index " + std::to_string(c) +
                            ") is not identifiable without penalty");
    }
  }

  const Eigen::Index d = X.cols();
  CoxModel model;
  model.l2 = l2;
  model.beta = Eigen::VectorXd::Zero(d);

  auto penalized = [&](const SweepResult& r, const Eigen::VectorXd& b) {
    return r.nll + 0.5 * l2 * b.squaredNorm();
  };

  auto sweep = breslow_sweep(X, time, event, model.beta, true);
  double nll = penalized(sweep, model.beta);
  model.nll_path.push_back(nll);
  bool jitter_used = false;
  bool converged = false;

  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd grad = sweep.grad + l2 * model.beta;
    model.final_grad_norm = grad.cwiseAbs().maxCoeff();
    model.iterations = iter;
    if (model.final_grad_norm < tol) {
      converged = true;
      break;
    }

    Eigen::MatrixXd hess =
        sweep.hess + l2 * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd step;
    double jitter = 0.0;
    const double scale = std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0;; ++attempt) {
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      step = ldlt.solve(grad);
      const bool ok = step.allFinite() &&
                      (hess * step - grad).cwiseAbs().maxCoeff() <
                          1e-8 * (1.0 + grad.cwiseAbs().maxCoeff());
      if (ok) break;
      if (attempt >= 12)
        throw SingularError("Newton system unsolvable; data not identifiable");
      jitter = jitter == 0.0 ? 1e-10 * scale : jitter * 10.0;
      hess = sweep.hess + (l2 + jitter) * Eigen::MatrixXd::Identity(d, d);
      jitter_used = true;
    }

    // step-halving keeps the penalized objective non-increasing
    double step_scale = 1.0;
    Eigen::VectorXd candidate;
    SweepResult cand_sweep;
    double cand_nll = 0.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      candidate = model.beta - step_scale * step;
      cand_sweep = breslow_sweep(X, time, event, candidate, true);
      cand_nll = penalized(cand_sweep, candidate);
      if (std::isfinite(cand_nll) && cand_nll <= nll) {
        improved = true;
        break;
      }
      step_scale *= 0.5;
    }
    if (!improved) break; // no direction of decrease left; let the grad check decide

    model.beta = candidate;
    sweep = std::move(cand_sweep);
    nll = cand_nll;
    model.nll_path.push_back(nll);

    if (model.beta.cwiseAbs().maxCoeff() > 50.0)
      throw DivergedError("coefficients diverged (|beta| > 50)");
  }

  if (!converged) {
    Eigen::VectorXd grad = sweep.grad + l2 * model.beta;
    model.final_grad_norm = grad.cwiseAbs().maxCoeff();
    if (model.final_grad_norm >= tol) {
      if (l2 == 0.0 && jitter_used)
        throw SingularError("partial likelihood not identifiable without penalty");
      throw DivergedError("Newton did not converge in " + std::to_string(max_iter) +
                          " iterations (max |grad| = " +
                          std::to_string(model.final_grad_norm) + ")");
    }
  }

  model.covariance = robust_inverse(sweep.hess); // unpenalized information
  return model;
}

HazardRatio hazard_ratio(std::span<const std::uint8_t> groups,
                         std::span<const double> time,
                         std::span<const std::uint8_t> event) {
  if (groups.size() != time.size() || time.size() != event.size())
    throw ShapeMismatchError("groups/time/event size mismatch");
  const auto n_high = static_cast<std::size_t>(
      std::count_if(groups.begin(), groups.end(), [](std::uint8_t g) { return g != 0; }));
  if (n_high == 0 || n_high == groups.size())
    throw DegenerateGroupError("both groups must be nonempty");

  Eigen::MatrixXd X(static_cast<Eigen::Index>(groups.size()), 1);
  for (std::size_t i = 0; i < groups.size(); ++i)
    X(static_cast<Eigen::Index>(i), 0) = groups[i] ? 1.0 : 0.0;

  const CoxModel model = cox_fit(X, time, event, 0.0);
  HazardRatio out;
  out.log_hr_se = std::sqrt(model.covariance(0, 0));
  out.hr = std::exp(model.beta(0));
  const double z = model.beta(0) / out.log_hr_se;
  out.p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
  return out;
}

double BreslowBaseline::cumulative_hazard(double t) const {
  double h = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] > t) break;
    h = cum_hazard[k];
  }
  return h;
}

double BreslowBaseline::survival(double t, double eta) const {
  return std::exp(-cumulative_hazard(t) * std::exp(eta));
}

BreslowBaseline breslow_baseline(const Eigen::MatrixXd& X, std::span<const double> time,
                                 std::span<const std::uint8_t> event,
                                 const CoxModel& model) {
  const Eigen::VectorXd eta = model.linear_predictor(X);
  const auto sorted = sort_descending(time, event);
  const std::size_t n = time.size();

  // sweep descending, then reverse into ascending order
  std::vector<double> t_desc, increments;
  double s0 = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    std::size_t deaths = 0;
    while (j < n && time[sorted.order[j]] == time[sorted.order[i]]) {
      s0 += std::exp(eta(static_cast<Eigen::Index>(sorted.order[j])));
      deaths += event[sorted.order[j]] ? 1 : 0;
      ++j;
    }
    if (deaths > 0) {
      t_desc.push_back(time[sorted.order[i]]);
      increments.push_back(static_cast<double>(deaths) / s0);
    }
    i = j;
  }

  BreslowBaseline base;
  double cum = 0.0;
  for (std::size_t k = t_desc.size(); k > 0; --k) {
    cum += increments[k - 1];
    base.times.push_back(t_desc[k - 1]);
    base.cum_hazard.push_back(cum);
  }
  return base;
}

} // namespace survkit
