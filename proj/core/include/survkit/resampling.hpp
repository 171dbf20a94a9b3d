#pragma once

#include "survkit/metrics.hpp"

#include <cstdint>
#include <vector>

namespace survkit {

enum class MetricKind { Auroc, AveragePrecision, ConcordanceIndex };

const char* metric_name(MetricKind kind);

/// One aligned sample: `score` is the prediction under test (2-year event
/// probability for the binary metrics, risk score for concordance);
/// `label` feeds AUROC/AP, (`time`, `event`) feed the concordance index.
struct MetricData {
  std::vector<double> score;
  std::vector<std::uint8_t> label;
  std::vector<double> time;
  std::vector<std::uint8_t> event;
};

double compute_metric(MetricKind kind, const MetricData& data);

struct CiInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap interval from `n_replicates` stratified resamples
/// (strata: the binary label for AUROC/AP, the event indicator for the
/// concordance index; class counts are preserved). Replicate r draws from
/// an RNG stream derived from (seed, r), so the result is independent of
/// evaluation order.
CiInterval stratified_bootstrap_ci(MetricKind kind, const MetricData& data,
                                   int n_replicates = 10000, double level = 0.95,
                                   std::uint64_t seed = 0);

/// Permutation p-value p = (1 + #{permuted >= observed}) / (n + 1).
/// Labels (or times and events, jointly) are permuted against fixed
/// predictions.
double permutation_test(MetricKind kind, const MetricData& data, int n_perm,
                        std::uint64_t seed);

} // namespace survkit
