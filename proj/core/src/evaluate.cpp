#include "survkit/evaluate.hpp"

#include "survkit/cox.hpp"
#include "survkit/error.hpp"

#include <nlohmann/json.hpp>

namespace survkit {

EvalReport evaluate_predictions(const PredictionSet& preds, const TruthSet& truth,
                                int n_boot, int n_perm, std::uint64_t seed,
                                double threshold) {
  const PredictionSet aligned = align_to_truth(preds, truth);

  EvalReport report;
  report.n_boot = n_boot;
  report.n_perm = n_perm;
  report.seed = seed;
  report.threshold = threshold;

  MetricData binary;
  binary.score = aligned.prob_2yr;
  binary.label = truth.label_2yr;

  MetricData risk;
  risk.score = aligned.effective_risk();
  risk.time = truth.time;
  risk.event = truth.event;

  auto summarize = [&](MetricKind kind, const MetricData& data, std::uint64_t salt) {
    MetricSummary s;
    s.point = compute_metric(kind, data);
    const auto ci = stratified_bootstrap_ci(kind, data, n_boot, 0.95, seed + salt);
    s.lo = ci.lo;
    s.hi = ci.hi;
    s.p_perm = permutation_test(kind, data, n_perm, seed + salt + 1000);
    return s;
  };

  report.auroc = summarize(MetricKind::Auroc, binary, 1);
  report.ap = summarize(MetricKind::AveragePrecision, binary, 2);
  report.c_index = summarize(MetricKind::ConcordanceIndex, risk, 3);

  const auto groups = stratify(aligned.prob_2yr, threshold);
  std::vector<double> t_low, t_high;
  std::vector<std::uint8_t> e_low, e_high;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i]) {
      t_high.push_back(truth.time[i]);
      e_high.push_back(truth.event[i]);
    } else {
      t_low.push_back(truth.time[i]);
      e_low.push_back(truth.event[i]);
    }
  }
  report.n_low = t_low.size();
  report.n_high = t_high.size();
  if (!t_low.empty()) report.km_low = kaplan_meier(t_low, e_low);
  if (!t_high.empty()) report.km_high = kaplan_meier(t_high, e_high);
  if (!t_low.empty() && !t_high.empty()) {
    try {
      const auto hr = hazard_ratio(groups, truth.time, truth.event);
      report.hazard_ratio_value = hr.hr;
      report.hazard_ratio_p = hr.p;
    } catch (const Error&) {
      // degenerate grouping (e.g. one group fully censored); leave unset
    }
  }

  report.calibration = calibration_curve(aligned.prob_2yr, truth.label_2yr);
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  auto metric = [](const MetricSummary& m) {
    return nlohmann::json{{"point", m.point}, {"lo", m.lo}, {"hi", m.hi}};
  };
  j["auroc"] = metric(auroc);
  j["ap"] = metric(ap);
  j["c_index"] = metric(c_index);
  j["p_perm"] = {{"auroc", auroc.p_perm}, {"ap", ap.p_perm}, {"c_index", c_index.p_perm}};
  j["n_boot"] = n_boot;
  j["n_perm"] = n_perm;
  j["seed"] = seed;
  j["threshold"] = threshold;

  nlohmann::json groups;
  groups["n_low"] = n_low;
  groups["n_high"] = n_high;
  if (hazard_ratio_value) {
    groups["hazard_ratio"] = *hazard_ratio_value;
    groups["hr_p"] = *hazard_ratio_p;
  }
  j["groups"] = groups;

  nlohmann::json cal = nlohmann::json::array();
  for (const auto& bin : calibration)
    cal.push_back({{"mean_pred", bin.mean_pred},
                   {"frac_pos", bin.frac_pos},
                   {"count", bin.count}});
  j["calibration"] = cal;
  return j.dump(2) + "\n";
}

} // namespace survkit
