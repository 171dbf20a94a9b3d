#include "survkit/models.hpp"

#include "survkit/error.hpp"

namespace survkit {

PredictionSet CoxSurvivalModel::predict(const SurvivalDataset& data) const {
  const EncodedMatrix enc = encode_with_stats(data, stats, include_volume);
  const Eigen::VectorXd eta = cox.linear_predictor(enc.X);

  PredictionSet preds;
  preds.name = "cox";
  preds.ids = enc.ids;
  preds.risk.emplace(eta.data(), eta.data() + eta.size());
  preds.curves.emplace();
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    preds.prob_2yr.push_back(1.0 - baseline.survival(24.0, eta(i)));
    std::array<double, 24> curve{};
    for (int m = 0; m < 24; ++m)
      curve[static_cast<std::size_t>(m)] = baseline.survival(m, eta(i));
    preds.curves->push_back(curve);
  }
  return preds;
}

CoxSurvivalModel fit_cox_survival(const SurvivalDataset& train, double l2,
                                  bool include_volume) {
  CoxSurvivalModel model;
  model.schema = train.schema;
  model.include_volume = include_volume;
  model.l2 = l2;
  model.stats = training_stats(train, include_volume);
  const EncodedMatrix enc = encode_with_stats(train, model.stats, include_volume);
  const auto times = train.times();
  const auto events = train.events();
  model.cox = cox_fit(enc.X, times, events, l2);
  model.cox.col_labels = enc.col_labels;
  model.baseline = breslow_baseline(enc.X, times, events, model.cox);
  return model;
}

PredictionSet LogisticSurvivalModel::predict(const SurvivalDataset& data) const {
  const EncodedMatrix enc = encode_with_stats(data, stats, include_volume);
  const Eigen::VectorXd p = logit.predict_proba(enc.X);
  PredictionSet preds;
  preds.name = "logistic";
  preds.ids = enc.ids;
  preds.prob_2yr.assign(p.data(), p.data() + p.size());
  return preds;
}

LogisticSurvivalModel fit_logistic_survival(const SurvivalDataset& train, double l2,
                                            bool include_volume, bool class_weighted) {
  LogisticSurvivalModel model;
  model.schema = train.schema;
  model.include_volume = include_volume;
  model.stats = training_stats(train, include_volume);
  const EncodedMatrix enc = encode_with_stats(train, model.stats, include_volume);
  const auto labels = train.labels_2yr();
  model.logit = logistic_fit(enc.X, labels, l2, class_weighted);
  model.logit.col_labels = enc.col_labels;
  return model;
}

PredictionSet predict_mtlr(const MtlrModel& model, const SurvivalDataset& data) {
  const EncodedMatrix enc = encode_with_stats(data, model.stats, model.include_volume);
  PredictionSet preds;
  preds.name = model.config.include_volume ? "deep-mtlr" : "mtlr";
  preds.ids = enc.ids;
  preds.risk.emplace();
  preds.curves.emplace();
  for (Eigen::Index i = 0; i < enc.X.rows(); ++i) {
    const Eigen::VectorXd x = enc.X.row(i).transpose();
    const auto curve = model.predict_curve(x);
    std::array<double, 24> arr{};
    std::copy(curve.begin(), curve.end(), arr.begin());
    preds.curves->push_back(arr);
    preds.prob_2yr.push_back(model.predict_two_year(x));
    preds.risk->push_back(model.lifetime_risk(x));
  }
  return preds;
}

PredictionSet predict_fuzzy(const FuzzyModel& model, const SurvivalDataset& data) {
  PredictionSet preds;
  preds.name = "fuzzy";
  for (const auto& r : data.records) preds.ids.push_back(r.id);
  preds.prob_2yr = model.predict_binary(data);
  if (model.risk_low && model.risk_high) preds.risk = model.predict_risk(data);
  return preds;
}

PredictionSet predict_any(const AnyModel& model, const SurvivalDataset& data) {
  return std::visit(
      [&](const auto& m) -> PredictionSet {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MtlrModel>)
          return predict_mtlr(m, data);
        else if constexpr (std::is_same_v<T, FuzzyModel>)
          return predict_fuzzy(m, data);
        else
          return m.predict(data);
      },
      model);
}

std::string model_kind(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MtlrModel>)
          return m.config.include_volume ? "deep-mtlr" : "mtlr";
        else if constexpr (std::is_same_v<T, CoxSurvivalModel>)
          return "cox";
        else if constexpr (std::is_same_v<T, LogisticSurvivalModel>)
          return "logistic";
        else if constexpr (std::is_same_v<T, FuzzyModel>)
          return "fuzzy";
        else
          return "baseline-" + m.kind;
      },
      model);
}

} // namespace survkit
