#pragma once

#include "survkit/baselines.hpp"
#include "survkit/cox.hpp"
#include "survkit/dataset.hpp"
#include "survkit/fuzzy.hpp"
#include "survkit/logistic.hpp"
#include "survkit/mtlr.hpp"
#include "survkit/prediction.hpp"

#include <string>
#include <variant>

namespace survkit {

/// Proportional-hazards model over the full encoded design matrix, with
/// a Breslow baseline so it can emit absolute survival probabilities and
/// monthly curves.
struct CoxSurvivalModel {
  FeatureSchema schema;
  std::vector<Normalization> stats;
  bool include_volume = false;
  double l2 = 0.0;
  CoxModel cox;
  BreslowBaseline baseline;

  PredictionSet predict(const SurvivalDataset& data) const;
};

CoxSurvivalModel fit_cox_survival(const SurvivalDataset& train, double l2,
                                  bool include_volume);

/// Plain L2 logistic regression on the binary 2-year endpoint. Emits no
/// risk column: downstream scoring falls back to the 2-year probability.
struct LogisticSurvivalModel {
  FeatureSchema schema;
  std::vector<Normalization> stats;
  bool include_volume = false;
  LogisticModel logit;

  PredictionSet predict(const SurvivalDataset& data) const;
};

LogisticSurvivalModel fit_logistic_survival(const SurvivalDataset& train, double l2,
                                            bool include_volume,
                                            bool class_weighted = false);

PredictionSet predict_mtlr(const MtlrModel& model, const SurvivalDataset& data);
PredictionSet predict_fuzzy(const FuzzyModel& model, const SurvivalDataset& data);

using AnyModel =
    std::variant<MtlrModel, CoxSurvivalModel, LogisticSurvivalModel, FuzzyModel,
                 BaselineModel>;

PredictionSet predict_any(const AnyModel& model, const SurvivalDataset& data);

/// Structured-text (JSON) model files with full-precision decimals; a
/// reloaded model reproduces predictions bit-for-bit. The schema hash is
/// stored and checked on load.
void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

std::string model_kind(const AnyModel& model);

} // namespace survkit
