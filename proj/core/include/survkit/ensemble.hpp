#pragma once

#include "survkit/prediction.hpp"

#include <string>
#include <vector>

namespace survkit {

/// Unweighted elementwise mean of member predictions. A member lacking a
/// risk column contributes its 2-year event probability to the risk mean;
/// curves are averaged pointwise over the members that supplied them.
PredictionSet ensemble_average(const std::vector<PredictionSet>& members);

/// Member order ranked best-to-worst by AUROC, ties by AP, then by name.
std::vector<std::size_t> rank_predictions(const std::vector<PredictionSet>& members,
                                          const TruthSet& truth);

/// AUROC of the ensemble of the top-m ranked members, for m = 1..M.
/// `ranked` must already be in best-to-worst order.
std::vector<double> partial_ensembles(const std::vector<PredictionSet>& ranked,
                                      const TruthSet& truth);

struct VolumeAuditRow {
  std::string name;
  double spearman_volume = 0.0;
  double auroc = 0.0;
  double c_index = 0.0;
};

/// Spearman correlation of each member's 2-year predictions with tumour
/// volume, alongside its AUROC and concordance. `volumes` is aligned with
/// the truth id order.
std::vector<VolumeAuditRow>
volume_correlation_audit(const std::vector<PredictionSet>& members,
                         const std::vector<double>& volumes, const TruthSet& truth);

std::string volume_audit_csv(const std::vector<VolumeAuditRow>& rows);

} // namespace survkit
