#include "survkit/fuzzy.hpp"

#include "survkit/error.hpp"
#include "survkit/stats_util.hpp"

#include <algorithm>

namespace survkit {

namespace {

bool is_radiomic(const std::string& label, const std::string& prefix) {
  return label.rfind(prefix, 0) == 0;
}

std::vector<std::size_t> expert_column_subset(const EncodedMatrix& enc,
                                              const FuzzyInputs& inputs) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < enc.col_labels.size(); ++c) {
    const auto& label = enc.col_labels[c];
    if (label == "volume") continue; // volume is the gating variable
    const bool radiomic = is_radiomic(label, inputs.radiomics_prefix);
    switch (inputs.kind) {
    case FuzzyInputs::Kind::Emr:
      if (!radiomic) cols.push_back(c);
      break;
    case FuzzyInputs::Kind::All: cols.push_back(c); break;
    case FuzzyInputs::Kind::Radiomics:
      if (radiomic) cols.push_back(c);
      break;
    }
  }
  if (cols.empty()) throw InvalidConfigError("fuzzy expert input subset is empty");
  return cols;
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& X, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

} // namespace

FuzzyModel fuzzy_fit(const SurvivalDataset& train, const FuzzyConfig& config) {
  FuzzyModel model;
  model.schema = train.schema;
  model.config = config;

  const std::vector<double> vol = train.volumes(); // throws if volume absent
  model.median_volume = quantile_type7(vol, 0.5);

  std::vector<std::uint8_t> gate_target;
  gate_target.reserve(vol.size());
  for (double v : vol) gate_target.push_back(v > model.median_volume ? 1 : 0);
  const auto n_high = static_cast<std::size_t>(
      std::count(gate_target.begin(), gate_target.end(), std::uint8_t{1}));
  if (n_high == 0 || n_high == gate_target.size())
    throw DegenerateGroupError("volume split produced an empty subgroup");

  model.stats = training_stats(train, true);
  const EncodedMatrix enc = encode_with_stats(train, model.stats, true);

  model.expert_cols = expert_column_subset(enc, config.inputs);
  if (config.gate_on_all_features) {
    model.gate_cols.resize(enc.cols());
    for (std::size_t c = 0; c < enc.cols(); ++c) model.gate_cols[c] = c;
  } else {
    model.gate_cols = {enc.cols() - 1}; // the trailing volume column
  }

  const EncodedMatrix gate_X = enc.select_columns(model.gate_cols);
  model.gate = logistic_fit(gate_X.X, gate_target, config.gate_l2);
  model.gate.col_labels = gate_X.col_labels;

  const EncodedMatrix expert_X = enc.select_columns(model.expert_cols);
  std::vector<std::size_t> low_rows, high_rows;
  for (std::size_t i = 0; i < gate_target.size(); ++i)
    (gate_target[i] ? high_rows : low_rows).push_back(i);

  const auto labels = train.labels_2yr();
  const auto times = train.times();
  const auto events = train.events();

  auto fit_group = [&](const std::vector<std::size_t>& rows, const char* side) {
    std::pair<std::optional<LogisticModel>, std::optional<CoxModel>> fitted;
    const Eigen::MatrixXd Xg = rows_of(expert_X.X, rows);
    if (config.task == FuzzyTask::Binary || config.task == FuzzyTask::Both) {
      std::vector<std::uint8_t> y;
      for (auto r : rows) y.push_back(labels[r]);
      const auto ones = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
      if (ones == 0 || ones == y.size())
        throw DegenerateGroupError(std::string("one-class 2-year label in ") + side +
                                   "-volume subgroup");
      fitted.first = logistic_fit(Xg, y, config.expert_l2);
      fitted.first->col_labels = expert_X.col_labels;
    }
    if (config.task == FuzzyTask::Risk || config.task == FuzzyTask::Both) {
      std::vector<double> t;
      std::vector<std::uint8_t> e;
      for (auto r : rows) {
        t.push_back(times[r]);
        e.push_back(events[r]);
      }
      if (std::count(e.begin(), e.end(), std::uint8_t{1}) == 0)
        throw DegenerateGroupError(std::string("no events in ") + side +
                                   "-volume subgroup");
      fitted.second = cox_fit(Xg, t, e, config.expert_cox_l2);
      fitted.second->col_labels = expert_X.col_labels;
    }
    return fitted;
  };

  auto low = fit_group(low_rows, "low");
  auto high = fit_group(high_rows, "high");
  model.binary_low = std::move(low.first);
  model.risk_low = std::move(low.second);
  model.binary_high = std::move(high.first);
  model.risk_high = std::move(high.second);
  return model;
}

std::vector<double> FuzzyModel::predict_binary(const SurvivalDataset& data) const {
  if (!binary_low || !binary_high)
    throw ShapeMismatchError("fuzzy model has no binary experts");
  const EncodedMatrix enc = encode_with_stats(data, stats, true);
  const Eigen::VectorXd g = gate.predict_proba(enc.select_columns(gate_cols).X);
  const EncodedMatrix ex = enc.select_columns(expert_cols);
  const Eigen::VectorXd lo = binary_low->predict_proba(ex.X);
  const Eigen::VectorXd hi = binary_high->predict_proba(ex.X);

  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out[i] = g(r) * hi(r) + (1.0 - g(r)) * lo(r);
  }
  return out;
}

std::vector<double> FuzzyModel::predict_risk(const SurvivalDataset& data) const {
  if (!risk_low || !risk_high)
    throw ShapeMismatchError("fuzzy model has no risk experts");
  const EncodedMatrix enc = encode_with_stats(data, stats, true);
  const Eigen::VectorXd g = gate.predict_proba(enc.select_columns(gate_cols).X);
  const EncodedMatrix ex = enc.select_columns(expert_cols);
  const Eigen::VectorXd lo = risk_low->linear_predictor(ex.X);
  const Eigen::VectorXd hi = risk_high->linear_predictor(ex.X);

  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out[i] = g(r) * hi(r) + (1.0 - g(r)) * lo(r);
  }
  return out;
}

} // namespace survkit
