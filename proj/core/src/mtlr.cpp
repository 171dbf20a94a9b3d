#include "survkit/mtlr.hpp"

#include "survkit/adam.hpp"
#include "survkit/error.hpp"
#include "survkit/rng.hpp"
#include "survkit/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

namespace survkit {

std::size_t TimeGrid::event_bin(double t) const {
  const auto it = std::lower_bound(edges.begin(), edges.end(), t);
  return static_cast<std::size_t>(it - edges.begin()) + 1;
}

std::size_t TimeGrid::censor_bin(double t_c) const {
  // smallest i with t_i >= T_c; the indicator shares the event-bin rule
  return event_bin(t_c);
}

TimeGrid make_time_grid(std::span<const double> time,
                        std::span<const std::uint8_t> event) {
  if (time.size() != event.size()) throw ShapeMismatchError("time/event size mismatch");
  std::size_t n_unc = 0;
  for (auto e : event) n_unc += e ? 1 : 0;
  if (n_unc < 4)
    throw TooFewEventsError("need at least 4 uncensored subjects, have " +
                            std::to_string(n_unc));

  const auto k = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_unc))));
  std::vector<double> obs(time.begin(), time.end());

  TimeGrid grid;
  for (std::size_t i = 1; i < k; ++i)
    grid.edges.push_back(
        quantile_type7(obs, static_cast<double>(i) / static_cast<double>(k)));
  const std::size_t before = grid.edges.size();
  grid.edges.erase(std::unique(grid.edges.begin(), grid.edges.end()), grid.edges.end());
  if (grid.edges.size() < before)
    std::cerr << "[survkit] time grid: collapsed " << before - grid.edges.size()
              << " duplicate quantile edge(s), K reduced to " << grid.n_bins() << "\n";
  return grid;
}

TargetEncoding encode_targets(std::span<const double> time,
                              std::span<const std::uint8_t> event,
                              const TimeGrid& grid) {
  if (time.size() != event.size()) throw ShapeMismatchError("time/event size mismatch");
  TargetEncoding enc;
  enc.is_event.assign(event.begin(), event.end());
  enc.bin.reserve(time.size());
  for (std::size_t i = 0; i < time.size(); ++i)
    enc.bin.push_back(event[i] ? grid.event_bin(time[i]) : grid.censor_bin(time[i]));
  return enc;
}

void TrainConfig::validate() const {
  if (batch_size == 0) throw InvalidConfigError("batch_size must be > 0");
  if (!(learning_rate > 0.0)) throw InvalidConfigError("learning_rate must be > 0");
  if (weight_decay < 0.0) throw InvalidConfigError("weight_decay must be >= 0");
  if (dropout < 0.0 || dropout >= 1.0) throw InvalidConfigError("dropout in [0, 1)");
  if (epochs == 0) throw InvalidConfigError("epochs must be > 0");
  if (c1 < 0.0) throw InvalidConfigError("c1 must be >= 0");
  for (auto h : hidden_sizes)
    if (h == 0) throw InvalidConfigError("hidden layer width must be > 0");
}

TrainConfig deep_mtlr_defaults() {
  TrainConfig c;
  c.batch_size = 512;
  c.dropout = 0.24;
  c.hidden_sizes = {128};
  c.c1 = 10.0;
  c.learning_rate = 0.006;
  c.weight_decay = 6e-5;
  c.epochs = 100;
  c.include_volume = true;
  return c;
}

TrainConfig emr_mtlr_defaults() {
  TrainConfig c;
  c.batch_size = 1024;
  c.dropout = 0.14;
  c.hidden_sizes = {32, 32, 32};
  c.c1 = 10.0;
  c.learning_rate = 0.006;
  c.weight_decay = 1.3e-6;
  c.epochs = 100;
  c.include_volume = false;
  return c;
}

namespace {

/// Sequence scores s_i = sum_{k >= i} f_k for i = 1..K (s_K = 0), as a
/// batch x K matrix built from suffix sums of the bin scores.
Eigen::MatrixXd sequence_scores(const Eigen::MatrixXd& f) {
  const Eigen::Index b = f.rows();
  const Eigen::Index km1 = f.cols();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(b, km1 + 1);
  for (Eigen::Index k = km1 - 1; k >= 0; --k) s.col(k) = s.col(k + 1) + f.col(k);
  return s;
}

struct LossGrad {
  double loss = 0.0;
  Eigen::MatrixXd d_scores; // d loss / d f, batch x (K-1); empty if not requested
};

LossGrad sequence_nll(const Eigen::MatrixXd& s, const std::vector<std::uint8_t>& is_event,
                      const std::vector<std::size_t>& bin, bool with_grad) {
  const auto b = static_cast<std::size_t>(s.rows());
  const auto k = static_cast<std::size_t>(s.cols());
  LossGrad out;
  Eigen::MatrixXd ds; // d loss / d s, batch x K
  if (with_grad) ds.setZero(s.rows(), s.cols());

  double total = 0.0;
  for (std::size_t r = 0; r < b; ++r) {
    const auto row = s.row(static_cast<Eigen::Index>(r));
    const double mx = row.maxCoeff();
    double z_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      z_sum += std::exp(row(static_cast<Eigen::Index>(i)) - mx);
    const double log_z = mx + std::log(z_sum);

    if (bin[r] < 1 || bin[r] > k) throw ShapeMismatchError("target bin out of range");
    const std::size_t first = bin[r]; // event bin, or first allowed bin if censored
    if (is_event[r]) {
      total += log_z - row(static_cast<Eigen::Index>(first - 1));
    } else {
      double mx_a = row(static_cast<Eigen::Index>(first - 1));
      for (std::size_t i = first - 1; i < k; ++i)
        mx_a = std::max(mx_a, row(static_cast<Eigen::Index>(i)));
      double a_sum = 0.0;
      for (std::size_t i = first - 1; i < k; ++i)
        a_sum += std::exp(row(static_cast<Eigen::Index>(i)) - mx_a);
      total += log_z - (mx_a + std::log(a_sum));
    }

    if (with_grad) {
      const double inv_b = 1.0 / static_cast<double>(b);
      for (std::size_t i = 0; i < k; ++i)
        ds(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
            std::exp(row(static_cast<Eigen::Index>(i)) - log_z) * inv_b;
      if (is_event[r]) {
        ds(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(first - 1)) -= inv_b;
      } else {
        double mx_a = row(static_cast<Eigen::Index>(first - 1));
        for (std::size_t i = first - 1; i < k; ++i)
          mx_a = std::max(mx_a, row(static_cast<Eigen::Index>(i)));
        double a_sum = 0.0;
        for (std::size_t i = first - 1; i < k; ++i)
          a_sum += std::exp(row(static_cast<Eigen::Index>(i)) - mx_a);
        const double log_a = mx_a + std::log(a_sum);
        for (std::size_t i = first - 1; i < k; ++i)
          ds(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) -=
              std::exp(row(static_cast<Eigen::Index>(i)) - log_a) * inv_b;
      }
    }
  }
  out.loss = total / static_cast<double>(b);

  if (with_grad) {
    // d loss / d f_k = sum_{i <= k} d loss / d s_i (f has K-1 columns)
    out.d_scores.setZero(s.rows(), s.cols() - 1);
    Eigen::VectorXd prefix = Eigen::VectorXd::Zero(s.rows());
    for (Eigen::Index kk = 0; kk + 1 < s.cols(); ++kk) {
      prefix += ds.col(kk);
      out.d_scores.col(kk) = prefix;
    }
  }
  return out;
}

struct FullEval {
  double loss = 0.0;
  MtlrGradient grad;
};

FullEval loss_and_gradient(const MtlrModel& model, const MtlrBatch& batch,
                           std::mt19937_64* dropout_rng, bool with_grad) {
  if (batch.x.rows() == 0) throw ShapeMismatchError("empty batch");
  if (batch.is_event.size() != static_cast<std::size_t>(batch.x.rows()) ||
      batch.bin.size() != batch.is_event.size())
    throw ShapeMismatchError("batch target size mismatch");
  if (static_cast<std::size_t>(model.theta.rows()) + 1 != model.n_bins())
    throw ShapeMismatchError("theta rows do not match the time grid");

  const auto fwd = model.transform.forward(batch.x, dropout_rng);
  const Eigen::MatrixXd& phi = fwd.output();
  if (phi.cols() != model.theta.cols())
    throw ShapeMismatchError("phi width does not match theta");

  Eigen::MatrixXd f =
      (phi * model.theta.transpose()).rowwise() + model.bias.transpose();
  const Eigen::MatrixXd s = sequence_scores(f);
  auto lg = sequence_nll(s, batch.is_event, batch.bin, with_grad);

  FullEval out;
  out.loss = lg.loss + 0.5 * model.c1 * model.theta.squaredNorm();
  if (with_grad) {
    out.grad.theta = lg.d_scores.transpose() * phi + model.c1 * model.theta;
    out.grad.bias = lg.d_scores.colwise().sum().transpose();
    const Eigen::MatrixXd d_phi = lg.d_scores * model.theta;
    out.grad.transform = model.transform.backward(fwd, d_phi);
  }
  return out;
}

} // namespace

Eigen::MatrixXd MtlrModel::bin_probabilities(const Eigen::MatrixXd& x) const {
  const auto fwd = transform.forward(x, nullptr);
  const Eigen::MatrixXd& phi = fwd.output();
  if (phi.cols() != theta.cols()) throw ShapeMismatchError("phi width mismatch");
  Eigen::MatrixXd f = (phi * theta.transpose()).rowwise() + bias.transpose();
  const Eigen::MatrixXd s = sequence_scores(f);
  Eigen::MatrixXd p(s.rows(), s.cols());
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    const double mx = s.row(r).maxCoeff();
    const Eigen::ArrayXd e = (s.row(r).array() - mx).exp();
    p.row(r) = (e / e.sum()).matrix();
  }
  return p;
}

double MtlrModel::survival_at(const Eigen::VectorXd& x, double t_months) const {
  if (t_months <= 0.0) return 1.0;
  const Eigen::MatrixXd p = bin_probabilities(x.transpose());
  const std::size_t k = n_bins();
  // survival at edges via suffix sums: S(t_j) = sum_{i > j} p_i
  std::vector<double> s_edge(k);
  double suffix = 0.0;
  for (std::size_t i = k; i > 0; --i) {
    suffix += p(0, static_cast<Eigen::Index>(i - 1));
    s_edge[i - 1] = suffix; // s_edge[j] = S just before bin j+1 = S(t_j)
  }
  // s_edge[j] currently = sum_{i >= j+1} p_i = S(t_j) with t_0 = 0
  const auto& edges = grid.edges;
  if (edges.empty()) return 1.0;
  double prev_t = 0.0, prev_s = 1.0;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const double s_j = s_edge[j + 1]; // S(t_{j+1} edge) = sum_{i > j+1}
    if (t_months <= edges[j]) {
      const double w = (t_months - prev_t) / (edges[j] - prev_t);
      return prev_s + w * (s_j - prev_s);
    }
    prev_t = edges[j];
    prev_s = s_j;
  }
  return prev_s; // beyond the last edge the curve stays flat
}

std::vector<double> MtlrModel::predict_curve(const Eigen::VectorXd& x) const {
  std::vector<double> curve(24);
  for (int m = 0; m < 24; ++m) curve[static_cast<std::size_t>(m)] = survival_at(x, m);
  return curve;
}

double MtlrModel::predict_two_year(const Eigen::VectorXd& x) const {
  return 1.0 - survival_at(x, 24.0);
}

double MtlrModel::lifetime_risk(const Eigen::VectorXd& x) const {
  double risk = 0.0;
  for (double edge : grid.edges) risk += 1.0 - survival_at(x, edge);
  return risk;
}

double mtlr_loss(const MtlrModel& model, const MtlrBatch& batch,
                 std::mt19937_64* dropout_rng) {
  return loss_and_gradient(model, batch, dropout_rng, false).loss;
}

MtlrGradient mtlr_gradient(const MtlrModel& model, const MtlrBatch& batch,
                           std::mt19937_64* dropout_rng) {
  return loss_and_gradient(model, batch, dropout_rng, true).grad;
}

Eigen::VectorXd flatten_parameters(const MtlrModel& model) {
  std::size_t n = static_cast<std::size_t>(model.theta.size()) +
                  static_cast<std::size_t>(model.bias.size());
  for (std::size_t l = 0; l < model.transform.n_layers(); ++l)
    n += static_cast<std::size_t>(model.transform.weights[l].size() +
                                  model.transform.biases[l].size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  Eigen::Index at = 0;
  auto put = [&](const double* data, Eigen::Index count) {
    out.segment(at, count) = Eigen::Map<const Eigen::VectorXd>(data, count);
    at += count;
  };
  for (std::size_t l = 0; l < model.transform.n_layers(); ++l) {
    put(model.transform.weights[l].data(), model.transform.weights[l].size());
    put(model.transform.biases[l].data(), model.transform.biases[l].size());
  }
  put(model.theta.data(), model.theta.size());
  put(model.bias.data(), model.bias.size());
  return out;
}

void unflatten_parameters(MtlrModel& model, const Eigen::VectorXd& params) {
  Eigen::Index at = 0;
  auto take = [&](double* data, Eigen::Index count) {
    Eigen::Map<Eigen::VectorXd>(data, count) = params.segment(at, count);
    at += count;
  };
  for (std::size_t l = 0; l < model.transform.n_layers(); ++l) {
    take(model.transform.weights[l].data(), model.transform.weights[l].size());
    take(model.transform.biases[l].data(), model.transform.biases[l].size());
  }
  take(model.theta.data(), model.theta.size());
  take(model.bias.data(), model.bias.size());
  if (at != params.size()) throw ShapeMismatchError("flat parameter size mismatch");
}

namespace {

Eigen::VectorXd flatten_gradient(const MtlrModel& model, const MtlrGradient& g) {
  MtlrModel shell = model; // reuse the flatten layout
  shell.transform.weights = g.transform.weights;
  shell.transform.biases = g.transform.biases;
  shell.theta = g.theta;
  shell.bias = g.bias;
  return flatten_parameters(shell);
}

} // namespace

double mtlr_loss_flat(MtlrModel& model, const Eigen::VectorXd& params,
                      const MtlrBatch& batch) {
  unflatten_parameters(model, params);
  return mtlr_loss(model, batch, nullptr);
}

Eigen::VectorXd mtlr_gradient_flat(MtlrModel& model, const Eigen::VectorXd& params,
                                   const MtlrBatch& batch) {
  unflatten_parameters(model, params);
  return flatten_gradient(model, mtlr_gradient(model, batch, nullptr));
}

MtlrModel train_mtlr(const SurvivalDataset& train, const TrainConfig& config) {
  config.validate();

  MtlrModel model;
  model.schema = train.schema;
  model.include_volume = config.include_volume;
  model.stats = training_stats(train, config.include_volume);
  model.c1 = config.c1;
  model.config = config;

  const EncodedMatrix enc = encode_with_stats(train, model.stats, config.include_volume);
  const auto times = train.times();
  const auto events = train.events();
  model.grid = make_time_grid(times, events);
  const auto targets = encode_targets(times, events, model.grid);

  auto init_rng = rng_stream(config.seed, 100);
  auto shuffle_rng = rng_stream(config.seed, 101);
  auto dropout_rng = rng_stream(config.seed, 102);

  const std::size_t d = enc.cols();
  model.transform = Mlp::init(d, config.hidden_sizes, config.dropout, init_rng);
  const auto m = static_cast<Eigen::Index>(model.transform.output_dim());
  const auto km1 = static_cast<Eigen::Index>(model.grid.n_bins() - 1);
  {
    const double bound = 1.0 / std::sqrt(static_cast<double>(m));
    std::uniform_real_distribution<double> u(-bound, bound);
    model.theta.resize(km1, m);
    for (Eigen::Index i = 0; i < km1; ++i)
      for (Eigen::Index j = 0; j < m; ++j) model.theta(i, j) = u(init_rng);
    model.bias.resize(km1);
    for (Eigen::Index i = 0; i < km1; ++i) model.bias(i) = u(init_rng);
  }

  MtlrBatch full;
  full.x = enc.X;
  full.is_event = targets.is_event;
  full.bin = targets.bin;
  model.initial_loss = mtlr_loss(model, full, nullptr);

  Eigen::VectorXd params = flatten_parameters(model);
  AdamOptimizer opt(params.size(), config.learning_rate, config.weight_decay);

  const std::size_t n = train.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t stop = std::min(n, start + config.batch_size);
      MtlrBatch batch;
      batch.x.resize(static_cast<Eigen::Index>(stop - start), enc.X.cols());
      for (std::size_t r = start; r < stop; ++r) {
        batch.x.row(static_cast<Eigen::Index>(r - start)) =
            enc.X.row(static_cast<Eigen::Index>(order[r]));
        batch.is_event.push_back(targets.is_event[order[r]]);
        batch.bin.push_back(targets.bin[order[r]]);
      }
      const auto eval = loss_and_gradient(model, batch, &dropout_rng, true);
      if (!std::isfinite(eval.loss))
        throw NonFiniteLossError("non-finite loss at epoch " + std::to_string(epoch) +
                                 ", batch offset " + std::to_string(start) +
                                 " (loss = " + std::to_string(eval.loss) + ")");
      opt.step(params, flatten_gradient(model, eval.grad));
      unflatten_parameters(model, params);
    }
  }

  model.final_loss = mtlr_loss(model, full, nullptr);
  return model;
}

} // namespace survkit
