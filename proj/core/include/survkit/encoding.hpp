#pragma once

#include "survkit/dataset.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace survkit {

/// Dense design matrix: one column per continuous feature (standardized
/// with training statistics), one column per categorical level (one-hot,
/// blocks sum to 1 per row), optionally a trailing standardized volume
/// column.
struct EncodedMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd X;
  std::vector<std::string> col_labels; // "name" or "name=level"

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return col_labels.size(); }

  /// Restriction to a column subset, preserving order of `indices`.
  EncodedMatrix select_columns(const std::vector<std::size_t>& indices) const;
};

/// One-hot + standardization encoding. Statistics (mean, sd) come from
/// `stats_from` (the training split); ZeroVariance if a training
/// continuous column is constant. Column order is deterministic: schema
/// order, levels in declared order, volume last.
EncodedMatrix encode(const SurvivalDataset& dataset, const SurvivalDataset& stats_from,
                     bool include_volume = false);

/// The per-feature training statistics used by encode(); exposed so models
/// can persist them.
std::vector<Normalization> training_stats(const SurvivalDataset& stats_from,
                                          bool include_volume);

/// encode() against precomputed statistics (model prediction path).
EncodedMatrix encode_with_stats(const SurvivalDataset& dataset,
                                const std::vector<Normalization>& stats,
                                bool include_volume);

} // namespace survkit
