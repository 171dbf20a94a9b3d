#pragma once

#include "survkit/schema.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace survkit {

/// A raw cell value: numeric, category label, or absent.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool cell_absent(const Cell& c) {
  return std::holds_alternative<std::monostate>(c);
}

struct SurvivalRecord {
  std::string id;
  std::vector<Cell> values; // aligned to schema.features
  double time = 0.0;        // months since diagnosis, > 0
  bool event = false;       // true = death observed
  std::optional<double> volume; // primary tumour volume, >= 0
};

enum class SplitTag { Train, Test, None };

/// Ground-truth generator parameters carried as side-channel metadata by
/// synthetic cohorts (never written into the dataset CSV itself).
struct GeneratorTruth {
  double lambda = 0.0;                 // baseline exponential hazard rate
  std::vector<std::string> beta_names; // one entry per generating coefficient
  std::vector<double> beta;            // the generating coefficients
  std::vector<double> risk;            // per-record true linear predictor
};

struct SurvivalDataset {
  FeatureSchema schema;
  std::vector<SurvivalRecord> records;
  SplitTag split_tag = SplitTag::None;
  bool has_volume = false;
  std::optional<GeneratorTruth> truth; // synthetic cohorts only

  std::size_t size() const { return records.size(); }
  std::size_t n_censored() const;

  std::vector<double> times() const;
  std::vector<std::uint8_t> events() const;
  /// Binarized 2-year endpoint: died within `horizon` months. Patients
  /// censored before the horizon count as negative (no censoring
  /// correction for the binary metrics).
  std::vector<std::uint8_t> labels_2yr(double horizon = 24.0) const;
  std::vector<double> volumes() const; // throws if any record lacks volume
};

/// Loads the dataset CSV `id,time,event,<features...>[,volume]`.
/// Empty categorical cells become the "missing" level; empty continuous
/// cells, unknown labels and nonpositive times are errors naming row and
/// column.
SurvivalDataset load_dataset(const std::string& path, const FeatureSchema& schema);

/// Writes the same CSV format. Values written with shortest round-trip
/// float formatting; write(load(f)) is idempotent on bytes.
void write_dataset(const SurvivalDataset& dataset, const std::string& path);

std::string dataset_to_csv(const SurvivalDataset& dataset);
SurvivalDataset parse_dataset_csv(const std::string& text, const FeatureSchema& schema);

enum class SplitKey { RecordIndex, Id };

/// Deterministic prefix/suffix split by sorted key; no shuffling. The key
/// is a pseudo-date total order (synthetic cohorts use record index).
std::pair<SurvivalDataset, SurvivalDataset>
split_train_test(const SurvivalDataset& dataset, double fraction,
                 SplitKey key = SplitKey::RecordIndex);

} // namespace survkit
