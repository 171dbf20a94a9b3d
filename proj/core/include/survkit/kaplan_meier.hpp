#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace survkit {

/// Product-limit estimate. Listed times are the distinct event times in
/// ascending order; survival starts at 1 before the first event time.
struct KaplanMeierCurve {
  std::vector<double> event_times;
  std::vector<double> survival;
  std::vector<std::size_t> at_risk;
  std::vector<std::size_t> events;

  /// S(t); 1 before the first event time, step function afterwards.
  double at(double t) const;
};

/// S(t) = prod_{t_k <= t} (1 - d_k / n_k). Subjects censored at an event
/// time count as at risk for that time.
KaplanMeierCurve kaplan_meier(std::span<const double> time,
                              std::span<const std::uint8_t> event);

/// CSV export for external plotting: time,survival,at_risk,events.
std::string kaplan_meier_csv(const KaplanMeierCurve& curve);

/// High-risk iff prob_2yr >= threshold (boundary goes to the high group).
std::vector<std::uint8_t> stratify(std::span<const double> prob_2yr,
                                   double threshold = 0.5);

} // namespace survkit
