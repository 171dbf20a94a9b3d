#pragma once

#include "survkit/cox.hpp"
#include "survkit/dataset.hpp"
#include "survkit/encoding.hpp"
#include "survkit/logistic.hpp"
#include "survkit/prediction.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace survkit {

/// One benchmark model: a logistic head for the binary endpoint and a
/// proportional-hazards head for the risk endpoint, both restricted to a
/// column subset of the encoded design matrix.
struct BaselineModel {
  std::string kind; // "clinical" | "volume" | "radiomics"
  FeatureSchema schema;
  std::vector<Normalization> stats;
  std::vector<std::size_t> cols;
  LogisticModel binary_head;
  CoxModel risk_head;
  BreslowBaseline baseline_hazard;

  PredictionSet predict(const SurvivalDataset& data) const;
};

struct BaselineSuite {
  BaselineModel clinical;
  BaselineModel volume;
  BaselineModel radiomics;
};

struct BaselineConfig {
  /// Standard prognostic factors; every name must exist in the schema.
  std::vector<std::string> clinical_features = {"age", "sex", "t_stage", "n_stage",
                                                "hpv"};
  std::string radiomics_prefix = "radiomic";
  double default_l2 = 1.0;   // binary heads of clinical/volume
  double cox_l2 = 1e-3;      // risk heads of clinical/volume
  std::vector<double> l2_grid = {0.01, 0.1, 1.0, 10.0};
  std::vector<int> k_grid;   // empty: 1..min(8, #radiomic columns)
  std::size_t folds = 5;
  std::uint64_t seed = 0;
};

/// The three benchmark models: standard clinical factors, tumour volume
/// alone, and MRMR-selected radiomic-style columns with (k, l2) tuned by
/// stratified 5-fold grid search on validation AUROC.
BaselineSuite baseline_suite(const SurvivalDataset& train,
                             const BaselineConfig& config = {});

} // namespace survkit
