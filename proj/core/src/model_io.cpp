#include "survkit/error.hpp"
#include "survkit/models.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace survkit {

namespace {

using nlohmann::json;

json to_json(const Eigen::MatrixXd& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::vector<double>(m.data(), m.data() + m.size());
  return j;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != m.size())
    throw FormatError("matrix payload size mismatch");
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

json to_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from_json(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(data.data(),
                                           static_cast<Eigen::Index>(data.size()));
}

json to_json(const FeatureSchema& schema) {
  json features = json::array();
  for (const auto& f : schema.features) {
    json jf;
    jf["name"] = f.name;
    jf["kind"] = f.kind == FeatureKind::Continuous ? "continuous" : "categorical";
    if (f.kind == FeatureKind::Categorical) jf["levels"] = f.levels;
    features.push_back(jf);
  }
  return features;
}

FeatureSchema schema_from_json(const json& j) {
  FeatureSchema schema;
  for (const auto& jf : j) {
    FeatureSpec f;
    f.name = jf.at("name").get<std::string>();
    f.kind = jf.at("kind").get<std::string>() == "continuous" ? FeatureKind::Continuous
                                                              : FeatureKind::Categorical;
    if (f.kind == FeatureKind::Categorical)
      f.levels = jf.at("levels").get<std::vector<std::string>>();
    schema.features.push_back(std::move(f));
  }
  schema.validate();
  return schema;
}

json to_json(const std::vector<Normalization>& stats) {
  json j = json::array();
  for (const auto& s : stats) j.push_back({{"mean", s.mean}, {"sd", s.sd}});
  return j;
}

std::vector<Normalization> stats_from_json(const json& j) {
  std::vector<Normalization> stats;
  for (const auto& js : j)
    stats.push_back({js.at("mean").get<double>(), js.at("sd").get<double>()});
  return stats;
}

json to_json(const LogisticModel& m) {
  json j;
  j["weights"] = to_json(m.weights);
  j["bias"] = m.bias;
  j["col_labels"] = m.col_labels;
  j["l2"] = m.l2;
  j["class_weighted"] = m.class_weighted;
  return j;
}

LogisticModel logistic_from_json(const json& j) {
  LogisticModel m;
  m.weights = vector_from_json(j.at("weights"));
  m.bias = j.at("bias").get<double>();
  m.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  m.l2 = j.at("l2").get<double>();
  m.class_weighted = j.at("class_weighted").get<bool>();
  return m;
}

json to_json(const CoxModel& m) {
  json j;
  j["beta"] = to_json(m.beta);
  j["col_labels"] = m.col_labels;
  j["l2"] = m.l2;
  return j;
}

CoxModel cox_from_json(const json& j) {
  CoxModel m;
  m.beta = vector_from_json(j.at("beta"));
  m.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  m.l2 = j.at("l2").get<double>();
  return m;
}

json to_json(const BreslowBaseline& b) {
  json j;
  j["times"] = b.times;
  j["cum_hazard"] = b.cum_hazard;
  return j;
}

BreslowBaseline breslow_from_json(const json& j) {
  BreslowBaseline b;
  b.times = j.at("times").get<std::vector<double>>();
  b.cum_hazard = j.at("cum_hazard").get<std::vector<double>>();
  return b;
}

json to_json(const Mlp& mlp) {
  json j;
  j["in_dim"] = mlp.in_dim;
  j["dropout"] = mlp.dropout;
  json layers = json::array();
  for (std::size_t l = 0; l < mlp.n_layers(); ++l)
    layers.push_back({{"w", to_json(mlp.weights[l])},
                      {"b", to_json(Eigen::VectorXd(mlp.biases[l]))}});
  j["layers"] = layers;
  return j;
}

Mlp mlp_from_json(const json& j) {
  Mlp mlp;
  mlp.in_dim = j.at("in_dim").get<std::size_t>();
  mlp.dropout = j.at("dropout").get<double>();
  for (const auto& layer : j.at("layers")) {
    mlp.weights.push_back(matrix_from_json(layer.at("w")));
    mlp.biases.push_back(vector_from_json(layer.at("b")));
  }
  return mlp;
}

json to_json(const TrainConfig& c) {
  json j;
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.learning_rate;
  j["weight_decay"] = c.weight_decay;
  j["dropout"] = c.dropout;
  j["epochs"] = c.epochs;
  j["hidden_sizes"] = c.hidden_sizes;
  j["c1"] = c.c1;
  j["seed"] = c.seed;
  j["include_volume"] = c.include_volume;
  return j;
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.dropout = j.at("dropout").get<double>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.hidden_sizes = j.at("hidden_sizes").get<std::vector<std::size_t>>();
  c.c1 = j.at("c1").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.include_volume = j.at("include_volume").get<bool>();
  return c;
}

json mtlr_to_json(const MtlrModel& m) {
  json j;
  j["stats"] = to_json(m.stats);
  j["include_volume"] = m.include_volume;
  j["grid_edges"] = m.grid.edges;
  j["transform"] = to_json(m.transform);
  j["theta"] = to_json(m.theta);
  j["bias"] = to_json(Eigen::VectorXd(m.bias));
  j["c1"] = m.c1;
  j["config"] = to_json(m.config);
  j["initial_loss"] = m.initial_loss;
  j["final_loss"] = m.final_loss;
  return j;
}

MtlrModel mtlr_from_json(const json& j, FeatureSchema schema) {
  MtlrModel m;
  m.schema = std::move(schema);
  m.stats = stats_from_json(j.at("stats"));
  m.include_volume = j.at("include_volume").get<bool>();
  m.grid.edges = j.at("grid_edges").get<std::vector<double>>();
  m.transform = mlp_from_json(j.at("transform"));
  m.theta = matrix_from_json(j.at("theta"));
  m.bias = vector_from_json(j.at("bias"));
  m.c1 = j.at("c1").get<double>();
  m.config = train_config_from_json(j.at("config"));
  m.initial_loss = j.at("initial_loss").get<double>();
  m.final_loss = j.at("final_loss").get<double>();
  return m;
}

json fuzzy_to_json(const FuzzyModel& m) {
  json j;
  j["stats"] = to_json(m.stats);
  j["median_volume"] = m.median_volume;
  j["gate_cols"] = m.gate_cols;
  j["expert_cols"] = m.expert_cols;
  j["gate"] = to_json(m.gate);
  if (m.binary_low) j["binary_low"] = to_json(*m.binary_low);
  if (m.binary_high) j["binary_high"] = to_json(*m.binary_high);
  if (m.risk_low) j["risk_low"] = to_json(*m.risk_low);
  if (m.risk_high) j["risk_high"] = to_json(*m.risk_high);
  return j;
}

FuzzyModel fuzzy_from_json(const json& j, FeatureSchema schema) {
  FuzzyModel m;
  m.schema = std::move(schema);
  m.stats = stats_from_json(j.at("stats"));
  m.median_volume = j.at("median_volume").get<double>();
  m.gate_cols = j.at("gate_cols").get<std::vector<std::size_t>>();
  m.expert_cols = j.at("expert_cols").get<std::vector<std::size_t>>();
  m.gate = logistic_from_json(j.at("gate"));
  if (j.contains("binary_low")) m.binary_low = logistic_from_json(j.at("binary_low"));
  if (j.contains("binary_high")) m.binary_high = logistic_from_json(j.at("binary_high"));
  if (j.contains("risk_low")) m.risk_low = cox_from_json(j.at("risk_low"));
  if (j.contains("risk_high")) m.risk_high = cox_from_json(j.at("risk_high"));
  return m;
}

json cox_survival_to_json(const CoxSurvivalModel& m) {
  json j;
  j["stats"] = to_json(m.stats);
  j["include_volume"] = m.include_volume;
  j["l2"] = m.l2;
  j["cox"] = to_json(m.cox);
  j["baseline"] = to_json(m.baseline);
  return j;
}

CoxSurvivalModel cox_survival_from_json(const json& j, FeatureSchema schema) {
  CoxSurvivalModel m;
  m.schema = std::move(schema);
  m.stats = stats_from_json(j.at("stats"));
  m.include_volume = j.at("include_volume").get<bool>();
  m.l2 = j.at("l2").get<double>();
  m.cox = cox_from_json(j.at("cox"));
  m.baseline = breslow_from_json(j.at("baseline"));
  return m;
}

json logistic_survival_to_json(const LogisticSurvivalModel& m) {
  json j;
  j["stats"] = to_json(m.stats);
  j["include_volume"] = m.include_volume;
  j["logit"] = to_json(m.logit);
  return j;
}

LogisticSurvivalModel logistic_survival_from_json(const json& j, FeatureSchema schema) {
  LogisticSurvivalModel m;
  m.schema = std::move(schema);
  m.stats = stats_from_json(j.at("stats"));
  m.include_volume = j.at("include_volume").get<bool>();
  m.logit = logistic_from_json(j.at("logit"));
  return m;
}

json baseline_to_json(const BaselineModel& m) {
  json j;
  j["baseline_kind"] = m.kind;
  j["stats"] = to_json(m.stats);
  j["cols"] = m.cols;
  j["binary_head"] = to_json(m.binary_head);
  j["risk_head"] = to_json(m.risk_head);
  j["baseline_hazard"] = to_json(m.baseline_hazard);
  return j;
}

BaselineModel baseline_from_json(const json& j, FeatureSchema schema) {
  BaselineModel m;
  m.schema = std::move(schema);
  m.kind = j.at("baseline_kind").get<std::string>();
  m.stats = stats_from_json(j.at("stats"));
  m.cols = j.at("cols").get<std::vector<std::size_t>>();
  m.binary_head = logistic_from_json(j.at("binary_head"));
  m.risk_head = cox_from_json(j.at("risk_head"));
  m.baseline_hazard = breslow_from_json(j.at("baseline_hazard"));
  return m;
}

constexpr const char* kFormatTag = "survkit-model-v1";

} // namespace

void save_model(const AnyModel& model, const std::string& path) {
  json j;
  j["format"] = kFormatTag;

  const FeatureSchema* schema = std::visit(
      [](const auto& m) -> const FeatureSchema* { return &m.schema; }, model);
  j["schema"] = to_json(*schema);
  j["schema_hash"] = schema->hash();

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MtlrModel>) {
          j["model_type"] = "mtlr";
          j["payload"] = mtlr_to_json(m);
        } else if constexpr (std::is_same_v<T, CoxSurvivalModel>) {
          j["model_type"] = "cox";
          j["payload"] = cox_survival_to_json(m);
        } else if constexpr (std::is_same_v<T, LogisticSurvivalModel>) {
          j["model_type"] = "logistic";
          j["payload"] = logistic_survival_to_json(m);
        } else if constexpr (std::is_same_v<T, FuzzyModel>) {
          j["model_type"] = "fuzzy";
          j["payload"] = fuzzy_to_json(m);
        } else {
          j["model_type"] = "baseline";
          j["payload"] = baseline_to_json(m);
        }
      },
      model);

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write model file: " + path);
  out << j.dump(2) << '\n';
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("model file is not valid JSON: " + std::string(e.what()));
  }

  try {
    if (j.at("format").get<std::string>() != kFormatTag)
      throw FormatError("unknown model file format tag");
    FeatureSchema schema = schema_from_json(j.at("schema"));
    if (schema.hash() != j.at("schema_hash").get<std::uint64_t>())
      throw FormatError("schema hash mismatch in model file");

    const auto type = j.at("model_type").get<std::string>();
    const json& payload = j.at("payload");
    if (type == "mtlr") return mtlr_from_json(payload, std::move(schema));
    if (type == "cox") return cox_survival_from_json(payload, std::move(schema));
    if (type == "logistic")
      return logistic_survival_from_json(payload, std::move(schema));
    if (type == "fuzzy") return fuzzy_from_json(payload, std::move(schema));
    if (type == "baseline") return baseline_from_json(payload, std::move(schema));
    throw FormatError("unknown model_type: " + type);
  } catch (const json::exception& e) {
    throw FormatError("malformed model file: " + std::string(e.what()));
  }
}

} // namespace survkit
