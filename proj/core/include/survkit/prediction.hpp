#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace survkit {

/// Per-patient submission: 2-year event probability, optional lifetime
/// risk score (higher = worse), optional 24-point monthly survival curve.
struct PredictionSet {
  std::string name; // submission name (file stem)
  std::vector<std::string> ids;
  std::vector<double> prob_2yr;
  std::optional<std::vector<double>> risk;
  std::optional<std::vector<std::array<double, 24>>> curves;

  std::size_t size() const { return ids.size(); }

  /// The risk used for concordance scoring: the submitted risk column,
  /// or the 2-year event probability as a proxy when risk is absent.
  std::vector<double> effective_risk() const;

  /// Format checker: array sizes, probabilities in [0, 1], curves
  /// non-increasing with values in [0, 1]. Throws FormatError.
  void validate() const;
};

/// Truth table for scoring: observed time, event indicator, binary
/// 2-year label.
struct TruthSet {
  std::vector<std::string> ids;
  std::vector<double> time;
  std::vector<std::uint8_t> event;
  std::vector<std::uint8_t> label_2yr;

  std::size_t size() const { return ids.size(); }
};

/// Prediction CSV: id,prob_2yr[,risk][,surv_m0..surv_m23].
PredictionSet load_predictions(const std::string& path);
void write_predictions(const PredictionSet& preds, const std::string& path);
PredictionSet parse_prediction_csv(const std::string& text, const std::string& name);
std::string prediction_to_csv(const PredictionSet& preds);

/// Truth CSV: id,time,event,label_2yr. Also accepts a dataset CSV
/// (id,time,event,...) and derives label_2yr = event && time <= 24.
TruthSet load_truth(const std::string& path);

/// Reorders `preds` rows to match the truth id order. Throws IdMismatch
/// if the id sets differ.
PredictionSet align_to_truth(const PredictionSet& preds, const TruthSet& truth);

} // namespace survkit
