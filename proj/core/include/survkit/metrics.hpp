#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace survkit {

/// Area under the ROC curve as the Mann–Whitney statistic:
/// P(score+ > score-) + 1/2 P(tie) over all positive/negative pairs.
/// Throws OneClassOnly unless both classes are present.
double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Non-interpolated average precision, AP = sum_n (R_n - R_{n-1}) P_n with
/// one step per distinct score value (descending); ties within a
/// threshold group are processed together. Throws NoPositives.
double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels);

/// Harrell-style concordance of risk scores against censored times.
/// Comparable pairs are (i, j) with i uncensored and t_j > t_i; the
/// numerator credits 1 for r_i > r_j and 1/2 for r_i = r_j; the
/// denominator counts every comparable pair once, including risk-tied
/// pairs. Throws NoComparablePairs.
double concordance_index(std::span<const double> risk, std::span<const double> time,
                         std::span<const std::uint8_t> event);

/// Spearman rank correlation: Pearson correlation of mid-ranks.
double spearman(std::span<const double> a, std::span<const double> b);

/// Benjamini–Hochberg step-up at level q; returns per-input rejection
/// flags in the original order.
std::vector<bool> fdr_select(std::span<const double> p_values, double q = 0.05);

struct CalibrationBin {
  double mean_pred = 0.0;
  double frac_pos = 0.0;
  std::size_t count = 0;
};

/// Equal-width reliability bins on [0, 1]; empty bins omitted; counts sum
/// to n.
std::vector<CalibrationBin> calibration_curve(std::span<const double> prob,
                                              std::span<const std::uint8_t> labels,
                                              std::size_t n_bins = 10);

} // namespace survkit
