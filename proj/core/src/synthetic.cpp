#include "survkit/synthetic.hpp"

#include "survkit/error.hpp"
#include "survkit/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace survkit {

namespace {

void check_config(const GeneratorConfig& cfg) {
  if (cfg.n == 0) throw EmptyDatasetError();
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
    throw InvalidConfigError("lambda must be a positive finite rate");
  if (cfg.censor_rate < 0.0 || cfg.censor_rate >= 1.0)
    throw InvalidConfigError("censor_rate must lie in [0, 1)");
  for (const auto& f : cfg.features) {
    if (f.name.empty()) throw InvalidConfigError("feature with empty name");
    if (f.kind == FeatureKind::Continuous) {
      if (!(f.sd > 0.0)) throw InvalidConfigError("sd must be > 0 for: " + f.name);
    } else {
      if (f.levels.empty()) throw InvalidConfigError("no levels for: " + f.name);
      if (f.levels.size() != f.probs.size() || f.levels.size() != f.level_betas.size())
        throw InvalidConfigError("levels/probs/beta size mismatch for: " + f.name);
      double total = 0.0;
      for (double p : f.probs) {
        if (p < 0.0) throw InvalidConfigError("negative level probability: " + f.name);
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-9)
        throw InvalidConfigError("level probabilities must sum to 1 for: " + f.name);
      if (f.missing_rate < 0.0 || f.missing_rate >= 1.0)
        throw InvalidConfigError("missing_rate must lie in [0, 1) for: " + f.name);
    }
  }
  if (cfg.volume && !(cfg.volume->log_sd > 0.0))
    throw InvalidConfigError("volume log_sd must be > 0");
}

/// Solves mean_i mu / (mu + r_i) = target by bisection; the left side is
/// increasing in mu from 0 to 1.
double calibrate_censor_rate(const std::vector<double>& rates, double target) {
  auto censored_frac = [&](double mu) {
    double s = 0.0;
    for (double r : rates) s += mu / (mu + r);
    return s / static_cast<double>(rates.size());
  };
  double lo = 1e-12, hi = 1.0;
  while (censored_frac(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (censored_frac(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double draw_positive_exponential(std::mt19937_64& rng, double rate) {
  std::exponential_distribution<double> dist(rate);
  double t = dist(rng);
  while (!(t > 0.0)) t = dist(rng);
  return t;
}

} // namespace

FeatureSchema schema_from_config(const GeneratorConfig& config) {
  FeatureSchema schema;
  for (const auto& f : config.features) {
    FeatureSpec spec;
    spec.name = f.name;
    spec.kind = f.kind;
    if (f.kind == FeatureKind::Categorical) {
      spec.levels = f.levels;
      spec.levels.emplace_back(kMissingLevel);
    }
    schema.features.push_back(std::move(spec));
  }
  schema.validate();
  return schema;
}

SurvivalDataset synthesize_cohort(const GeneratorConfig& config, std::uint64_t seed) {
  check_config(config);

  SurvivalDataset ds;
  ds.schema = schema_from_config(config);
  ds.has_volume = config.volume.has_value();

  GeneratorTruth truth;
  truth.lambda = config.lambda;
  for (const auto& f : config.features) {
    if (f.kind == FeatureKind::Continuous) {
      truth.beta_names.push_back(f.name);
      truth.beta.push_back(f.beta);
    } else {
      for (std::size_t l = 0; l < f.levels.size(); ++l) {
        truth.beta_names.push_back(f.name + "=" + f.levels[l]);
        truth.beta.push_back(f.level_betas[l]);
      }
    }
  }
  if (config.volume) {
    truth.beta_names.emplace_back("volume");
    truth.beta.push_back(config.volume->beta);
  }

  auto covariate_rng = rng_stream(seed, 0);
  auto missing_rng = rng_stream(seed, 1);
  auto event_rng = rng_stream(seed, 2);
  auto censor_rng = rng_stream(seed, 3);

  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> hazard_rates;
  hazard_rates.reserve(config.n);

  const int id_width = static_cast<int>(std::to_string(config.n).size());
  for (std::size_t i = 0; i < config.n; ++i) {
    SurvivalRecord rec;
    {
      std::ostringstream id;
      id << 'p';
      std::string num = std::to_string(i + 1);
      id << std::string(static_cast<std::size_t>(id_width) - num.size(), '0') << num;
      rec.id = id.str();
    }
    double risk = 0.0;
    for (const auto& f : config.features) {
      if (f.kind == FeatureKind::Continuous) {
        const double z = std_normal(covariate_rng);
        rec.values.emplace_back(f.mean + f.sd * z);
        risk += f.beta * z;
      } else {
        const double u = unit(covariate_rng);
        double acc = 0.0;
        std::size_t pick = f.levels.size() - 1;
        for (std::size_t l = 0; l < f.levels.size(); ++l) {
          acc += f.probs[l];
          if (u < acc) {
            pick = l;
            break;
          }
        }
        risk += f.level_betas[pick];
        if (f.missing_rate > 0.0 && unit(missing_rng) < f.missing_rate) {
          // blank the cell; the "missing" indicator carries no risk signal
          risk -= f.level_betas[pick];
          rec.values.emplace_back(std::string(kMissingLevel));
        } else {
          rec.values.emplace_back(f.levels[pick]);
        }
      }
    }
    if (config.volume) {
      const double z = std_normal(covariate_rng);
      rec.volume = std::exp(config.volume->log_mean + config.volume->log_sd * z);
      risk += config.volume->beta * z;
    }
    const double rate = config.lambda * std::exp(risk);
    hazard_rates.push_back(rate);
    rec.time = draw_positive_exponential(event_rng, rate);
    rec.event = true;
    truth.risk.push_back(risk);
    ds.records.push_back(std::move(rec));
  }

  if (config.censor_rate > 0.0) {
    const double mu = calibrate_censor_rate(hazard_rates, config.censor_rate);
    for (auto& rec : ds.records) {
      const double c = draw_positive_exponential(censor_rng, mu);
      if (c < rec.time) {
        rec.time = c;
        rec.event = false;
      }
    }
  }

  ds.truth = std::move(truth);
  return ds;
}

namespace {

GenFeature parse_feature(const nlohmann::json& j) {
  GenFeature f;
  f.name = j.at("name").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "continuous") {
    f.kind = FeatureKind::Continuous;
    f.mean = j.value("mean", 0.0);
    f.sd = j.value("sd", 1.0);
    f.beta = j.value("beta", 0.0);
  } else if (kind == "categorical") {
    f.kind = FeatureKind::Categorical;
    f.levels = j.at("levels").get<std::vector<std::string>>();
    if (j.contains("probs"))
      f.probs = j.at("probs").get<std::vector<double>>();
    else
      f.probs.assign(f.levels.size(), 1.0 / static_cast<double>(f.levels.size()));
    if (j.contains("beta"))
      f.level_betas = j.at("beta").get<std::vector<double>>();
    else
      f.level_betas.assign(f.levels.size(), 0.0);
    f.missing_rate = j.value("missing_rate", 0.0);
  } else {
    throw InvalidConfigError("unknown feature kind: " + kind);
  }
  return f;
}

} // namespace

GeneratorConfig parse_generator_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfigError(std::string("generator config is not valid JSON: ") +
                             e.what());
  }
  GeneratorConfig cfg;
  try {
    cfg.n = j.at("n").get<std::size_t>();
    cfg.lambda = j.at("lambda").get<double>();
    cfg.censor_rate = j.value("censor_rate", 0.0);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& f : j.value("features", nlohmann::json::array()))
      cfg.features.push_back(parse_feature(f));
    if (j.contains("volume")) {
      GenVolume v;
      v.log_mean = j["volume"].value("log_mean", 0.0);
      v.log_sd = j["volume"].value("log_sd", 1.0);
      v.beta = j["volume"].value("beta", 0.0);
      cfg.volume = v;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfigError(std::string("bad generator config: ") + e.what());
  }
  return cfg;
}

GeneratorConfig load_generator_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open generator config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator_config(buf.str());
}

} // namespace survkit
