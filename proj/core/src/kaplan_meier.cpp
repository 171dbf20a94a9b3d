#include "survkit/kaplan_meier.hpp"

#include "survkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace survkit {

double KaplanMeierCurve::at(double t) const {
  double s = 1.0;
  for (std::size_t k = 0; k < event_times.size(); ++k) {
    if (event_times[k] > t) break;
    s = survival[k];
  }
  return s;
}

KaplanMeierCurve kaplan_meier(std::span<const double> time,
                              std::span<const std::uint8_t> event) {
  if (time.empty()) throw EmptyInputError();
  if (time.size() != event.size()) throw ShapeMismatchError("time/event length mismatch");

  std::vector<std::size_t> order(time.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return time[a] < time[b]; });

  KaplanMeierCurve curve;
  double s = 1.0;
  std::size_t i = 0;
  const std::size_t n = time.size();
  while (i < n) {
    std::size_t j = i;
    std::size_t deaths = 0;
    while (j < n && time[order[j]] == time[order[i]]) {
      deaths += event[order[j]] ? 1 : 0;
      ++j;
    }
    if (deaths > 0) {
      const std::size_t at_risk = n - i;
      s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
      curve.event_times.push_back(time[order[i]]);
      curve.survival.push_back(s);
      curve.at_risk.push_back(at_risk);
      curve.events.push_back(deaths);
    }
    i = j;
  }
  return curve;
}

std::string kaplan_meier_csv(const KaplanMeierCurve& curve) {
  auto fmt = [](double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  std::ostringstream out;
  out << "time,survival,at_risk,events\n";
  for (std::size_t k = 0; k < curve.event_times.size(); ++k)
    out << fmt(curve.event_times[k]) << ',' << fmt(curve.survival[k]) << ','
        << curve.at_risk[k] << ',' << curve.events[k] << '\n';
  return out.str();
}

std::vector<std::uint8_t> stratify(std::span<const double> prob_2yr, double threshold) {
  std::vector<std::uint8_t> groups;
  groups.reserve(prob_2yr.size());
  for (double p : prob_2yr) groups.push_back(p >= threshold ? 1 : 0);
  return groups;
}

} // namespace survkit
