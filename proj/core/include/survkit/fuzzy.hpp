#pragma once

#include "survkit/cox.hpp"
#include "survkit/dataset.hpp"
#include "survkit/encoding.hpp"
#include "survkit/logistic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace survkit {

enum class FuzzyTask { Binary, Risk, Both };

/// Which schema features feed the subgroup experts. The gate always uses
/// tumour volume (optionally all features); designated "radiomic" columns
/// are recognized by name prefix.
struct FuzzyInputs {
  enum class Kind { Emr, All, Radiomics } kind = Kind::Emr;
  std::string radiomics_prefix = "radiomic";
};

struct FuzzyConfig {
  FuzzyTask task = FuzzyTask::Both;
  FuzzyInputs inputs;
  bool gate_on_all_features = false; // default: volume-only gate
  double gate_l2 = 1.0;
  double expert_l2 = 1.0;     // logistic experts
  double expert_cox_l2 = 1e-3;
};

/// Volume-gated soft mixture: a logistic gate predicts membership in the
/// large-volume half (split at the training median, ties to the low
/// group); per-subgroup experts handle the binary and risk tasks; the
/// prediction is the gate-weighted combination of the experts.
struct FuzzyModel {
  FeatureSchema schema;
  std::vector<Normalization> stats; // encode stats including volume
  FuzzyConfig config;
  double median_volume = 0.0;
  std::vector<std::size_t> gate_cols;   // encoded column subset for the gate
  std::vector<std::size_t> expert_cols; // encoded column subset for experts
  LogisticModel gate;
  std::optional<LogisticModel> binary_low, binary_high;
  std::optional<CoxModel> risk_low, risk_high;

  /// g(x) * expert_high + (1 - g(x)) * expert_low for each task.
  std::vector<double> predict_binary(const SurvivalDataset& data) const;
  std::vector<double> predict_risk(const SurvivalDataset& data) const;
};

FuzzyModel fuzzy_fit(const SurvivalDataset& train, const FuzzyConfig& config);

} // namespace survkit
