#pragma once

#include "survkit/dataset.hpp"
#include "survkit/encoding.hpp"
#include "survkit/mlp.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace survkit {

/// Discretized time axis: K bins separated by edges t_1 < ... < t_{K-1};
/// bin K is (t_{K-1}, inf).
struct TimeGrid {
  std::vector<double> edges;

  std::size_t n_bins() const { return edges.size() + 1; }
  /// Bin containing an event at time t: intervals are (t_{k-1}, t_k],
  /// so an event at an edge belongs to the bin ending there. 1-based.
  std::size_t event_bin(double t) const;
  /// Smallest bin index i with t_i >= censoring time (K when the
  /// censoring time exceeds every edge). 1-based.
  std::size_t censor_bin(double t_c) const;
};

/// K = ceil(sqrt(N_uncensored)); edges at equally spaced interior
/// quantiles (type-7) of the observed survival-time distribution;
/// duplicate quantiles are collapsed, reducing K.
TimeGrid make_time_grid(std::span<const double> time, std::span<const std::uint8_t> event);

/// Per-patient targets. An uncensored patient with event in bin j has the
/// indicator sequence y_k = 1{k >= j} (represented by `bin`); a censored
/// patient stores the smallest bin its event could still fall into.
struct TargetEncoding {
  std::vector<std::uint8_t> is_event;
  std::vector<std::size_t> bin; // event bin, or first allowed bin if censored

  std::size_t size() const { return bin.size(); }
};

TargetEncoding encode_targets(std::span<const double> time,
                              std::span<const std::uint8_t> event, const TimeGrid& grid);

struct TrainConfig {
  std::size_t batch_size = 512;
  double learning_rate = 0.006;
  double weight_decay = 6e-5;
  double dropout = 0.24;
  std::size_t epochs = 100;
  std::vector<std::size_t> hidden_sizes = {128};
  double c1 = 10.0;
  std::uint64_t seed = 0;
  bool include_volume = true;

  void validate() const;
};

/// The winning-submission defaults (combined EMR + volume inputs).
TrainConfig deep_mtlr_defaults();
/// The EMR-only analog: same algorithm, (32, 32, 32) net, no volume.
TrainConfig emr_mtlr_defaults();

struct MtlrModel {
  FeatureSchema schema;
  bool include_volume = false;
  std::vector<Normalization> stats; // training standardization statistics
  TimeGrid grid;
  Mlp transform;          // phi
  Eigen::MatrixXd theta;  // (K-1) x m
  Eigen::VectorXd bias;   // K-1
  double c1 = 0.0;
  TrainConfig config;     // echo of the training configuration
  double initial_loss = 0.0;
  double final_loss = 0.0;

  std::size_t n_bins() const { return grid.n_bins(); }

  /// Per-bin event probabilities (sequence softmax), rows sum to 1.
  Eigen::MatrixXd bin_probabilities(const Eigen::MatrixXd& x) const;

  /// S(t) on a 24-point monthly grid (months 0..23); S(0) = 1, linear
  /// interpolation within bins, flat beyond the last edge.
  std::vector<double> predict_curve(const Eigen::VectorXd& x) const;
  double survival_at(const Eigen::VectorXd& x, double t_months) const;
  /// 1 - S(24 months).
  double predict_two_year(const Eigen::VectorXd& x) const;
  /// Summed cumulative incidence over grid edges; a monotone transform of
  /// negative restricted mean survival.
  double lifetime_risk(const Eigen::VectorXd& x) const;
};

/// Flat views of the trainable parameters (transform, theta, bias), used
/// by the optimizer and by gradient checks.
Eigen::VectorXd flatten_parameters(const MtlrModel& model);
void unflatten_parameters(MtlrModel& model, const Eigen::VectorXd& params);

struct MtlrBatch {
  Eigen::MatrixXd x;             // batch rows
  std::vector<std::uint8_t> is_event;
  std::vector<std::size_t> bin;
};

/// Mean negative log likelihood over the batch plus the (C1/2) sum ||theta_k||^2
/// regularizer (added once per batch). Censored patients are marginalized
/// over all bins at or after their censoring bin via log-sum-exp.
double mtlr_loss(const MtlrModel& model, const MtlrBatch& batch,
                 std::mt19937_64* dropout_rng = nullptr);

struct MtlrGradient {
  Mlp::Gradient transform;
  Eigen::MatrixXd theta;
  Eigen::VectorXd bias;
};

/// Exact gradient of mtlr_loss with respect to every trainable parameter.
MtlrGradient mtlr_gradient(const MtlrModel& model, const MtlrBatch& batch,
                           std::mt19937_64* dropout_rng = nullptr);

/// Loss and gradient against a flat parameter vector (shapes from `model`).
double mtlr_loss_flat(MtlrModel& model, const Eigen::VectorXd& params,
                      const MtlrBatch& batch);
Eigen::VectorXd mtlr_gradient_flat(MtlrModel& model, const Eigen::VectorXd& params,
                                   const MtlrBatch& batch);

/// Minibatch Adam training, deterministic given config.seed.
MtlrModel train_mtlr(const SurvivalDataset& train, const TrainConfig& config);

} // namespace survkit
