#include "survkit/baselines.hpp"

#include "survkit/error.hpp"
#include "survkit/grid_search.hpp"
#include "survkit/mrmr.hpp"

#include <algorithm>

namespace survkit {

namespace {

std::vector<std::size_t> columns_for_features(const EncodedMatrix& enc,
                                              const FeatureSchema& schema,
                                              const std::vector<std::string>& names) {
  std::vector<std::size_t> cols;
  for (const auto& name : names) {
    const FeatureSpec* spec = schema.find(name);
    if (spec == nullptr)
      throw InvalidConfigError("clinical feature not in schema: " + name);
    for (std::size_t c = 0; c < enc.col_labels.size(); ++c) {
      const auto& label = enc.col_labels[c];
      if (label == name || label.rfind(name + "=", 0) == 0) cols.push_back(c);
    }
  }
  return cols;
}

BaselineModel fit_heads(const std::string& kind, const SurvivalDataset& train,
                        const std::vector<Normalization>& stats,
                        const EncodedMatrix& enc, std::vector<std::size_t> cols,
                        double logistic_l2, double cox_l2) {
  BaselineModel model;
  model.kind = kind;
  model.schema = train.schema;
  model.stats = stats;
  model.cols = std::move(cols);

  const EncodedMatrix sub = enc.select_columns(model.cols);
  const auto labels = train.labels_2yr();
  const auto times = train.times();
  const auto events = train.events();

  model.binary_head = logistic_fit(sub.X, labels, logistic_l2);
  model.binary_head.col_labels = sub.col_labels;
  model.risk_head = cox_fit(sub.X, times, events, cox_l2);
  model.risk_head.col_labels = sub.col_labels;
  model.baseline_hazard = breslow_baseline(sub.X, times, events, model.risk_head);
  return model;
}

} // namespace

PredictionSet BaselineModel::predict(const SurvivalDataset& data) const {
  const EncodedMatrix enc = encode_with_stats(data, stats, true);
  const EncodedMatrix sub = enc.select_columns(cols);

  PredictionSet preds;
  preds.name = "baseline-" + kind;
  preds.ids = sub.ids;
  const Eigen::VectorXd p = binary_head.predict_proba(sub.X);
  preds.prob_2yr.assign(p.data(), p.data() + p.size());
  const Eigen::VectorXd eta = risk_head.linear_predictor(sub.X);
  preds.risk.emplace(eta.data(), eta.data() + eta.size());
  return preds;
}

BaselineSuite baseline_suite(const SurvivalDataset& train, const BaselineConfig& config) {
  const auto stats = training_stats(train, true);
  const EncodedMatrix enc = encode_with_stats(train, stats, true);
  const auto labels = train.labels_2yr();

  BaselineSuite suite;
  suite.clinical = fit_heads(
      "clinical", train, stats, enc,
      columns_for_features(enc, train.schema, config.clinical_features),
      config.default_l2, config.cox_l2);

  suite.volume = fit_heads("volume", train, stats, enc, {enc.cols() - 1},
                           config.default_l2, config.cox_l2);

  // radiomic-style columns, selected by greedy MRMR with (k, l2) from CV
  std::vector<std::size_t> radiomic_cols;
  for (std::size_t c = 0; c < enc.col_labels.size(); ++c)
    if (enc.col_labels[c].rfind(config.radiomics_prefix, 0) == 0)
      radiomic_cols.push_back(c);
  if (radiomic_cols.empty())
    throw InvalidConfigError("no columns with radiomics prefix '" +
                             config.radiomics_prefix + "'");

  const EncodedMatrix rad = enc.select_columns(radiomic_cols);

  std::vector<int> k_grid = config.k_grid;
  if (k_grid.empty())
    for (int k = 1; k <= std::min<int>(8, static_cast<int>(radiomic_cols.size())); ++k)
      k_grid.push_back(k);

  std::vector<GridPoint> grid;
  for (double l2 : config.l2_grid)
    for (int k : k_grid) grid.push_back({l2, k});

  const FitScoreFn fit_score = [](const Eigen::MatrixXd& Xtr,
                                  std::span<const std::uint8_t> ytr,
                                  const Eigen::MatrixXd& Xva, const GridPoint& gp) {
    const auto sel = mrmr_select(Xtr, ytr, static_cast<std::size_t>(gp.k));
    Eigen::MatrixXd Xtr_s(Xtr.rows(), static_cast<Eigen::Index>(sel.size()));
    Eigen::MatrixXd Xva_s(Xva.rows(), static_cast<Eigen::Index>(sel.size()));
    for (std::size_t j = 0; j < sel.size(); ++j) {
      Xtr_s.col(static_cast<Eigen::Index>(j)) = Xtr.col(static_cast<Eigen::Index>(sel[j]));
      Xva_s.col(static_cast<Eigen::Index>(j)) = Xva.col(static_cast<Eigen::Index>(sel[j]));
    }
    return logistic_fit(Xtr_s, ytr, gp.l2).predict_proba(Xva_s);
  };

  const auto best =
      grid_search_cv(rad.X, labels, grid, fit_score, config.folds, config.seed);

  const auto sel =
      mrmr_select(rad.X, labels, static_cast<std::size_t>(best.best.k));
  std::vector<std::size_t> chosen;
  for (auto s : sel) chosen.push_back(radiomic_cols[s]);

  suite.radiomics = fit_heads("radiomics", train, stats, enc, chosen, best.best.l2,
                              best.best.l2);
  return suite;
}

} // namespace survkit
