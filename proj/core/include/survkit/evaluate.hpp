#pragma once

#include "survkit/kaplan_meier.hpp"
#include "survkit/metrics.hpp"
#include "survkit/prediction.hpp"
#include "survkit/resampling.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace survkit {

struct MetricSummary {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double p_perm = 1.0;
};

/// Full challenge-style evaluation of one submission: point estimates
/// with stratified-bootstrap CIs and permutation p-values, risk-group
/// stratification at the 0.5 threshold with Kaplan-Meier curves and the
/// hazard ratio, and the reliability (calibration) table.
struct EvalReport {
  MetricSummary auroc;
  MetricSummary ap;
  MetricSummary c_index;
  int n_boot = 0;
  int n_perm = 0;
  std::uint64_t seed = 0;
  double threshold = 0.5;

  std::size_t n_low = 0, n_high = 0;
  std::optional<double> hazard_ratio_value;
  std::optional<double> hazard_ratio_p;
  KaplanMeierCurve km_low, km_high;
  std::vector<CalibrationBin> calibration;

  std::string to_json() const;
};

EvalReport evaluate_predictions(const PredictionSet& preds, const TruthSet& truth,
                                int n_boot, int n_perm, std::uint64_t seed,
                                double threshold = 0.5);

} // namespace survkit
