#include "survkit/metrics.hpp"

#include "survkit/error.hpp"
#include "survkit/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace survkit {

namespace {

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeMismatchError("input lengths differ");
}

/// Fenwick tree over compressed ranks; counts insertions.
class Fenwick {
public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t rank) { // 1-based
    for (std::size_t i = rank; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }

  std::size_t prefix(std::size_t rank) const { // count of entries <= rank
    std::size_t s = 0;
    for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

private:
  std::vector<std::size_t> tree_;
};

std::vector<std::size_t> compress_ranks(std::span<const double> x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> rank(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    rank[i] = static_cast<std::size_t>(
                  std::lower_bound(sorted.begin(), sorted.end(), x[i]) -
                  sorted.begin()) +
              1;
  return rank;
}

} // namespace

double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_same_size(scores.size(), labels.size());
  std::size_t n_pos = 0;
  for (auto y : labels) n_pos += y ? 1 : 0;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw OneClassOnlyError();

  const auto rank = midranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i]) rank_sum_pos += rank[i];
  const double u =
      rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels) {
  check_same_size(scores.size(), labels.size());
  std::size_t n_pos = 0;
  for (auto y : labels) n_pos += y ? 1 : 0;
  if (n_pos == 0) throw NoPositivesError();

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  double ap = 0.0;
  double recall_prev = 0.0;
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]])
        ++tp;
      else
        ++fp;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    ap += (recall - recall_prev) * precision;
    recall_prev = recall;
    i = j + 1;
  }
  return ap;
}

double concordance_index(std::span<const double> risk, std::span<const double> time,
                         std::span<const std::uint8_t> event) {
  check_same_size(risk.size(), time.size());
  check_same_size(risk.size(), event.size());
  const std::size_t n = risk.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return time[a] > time[b]; });

  const auto rank = compress_ranks(risk);
  std::size_t max_rank = 0;
  for (auto r : rank) max_rank = std::max(max_rank, r);

  // Sweep times in descending order: everything already inserted has a
  // strictly larger time than the current tie group.
  Fenwick inserted(max_rank);
  std::size_t n_inserted = 0;
  double numerator = 0.0;
  std::size_t denominator = 0;

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && time[order[j + 1]] == time[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      const std::size_t idx = order[k];
      if (!event[idx]) continue;
      const std::size_t r = rank[idx];
      const std::size_t below = inserted.prefix(r - 1);
      const std::size_t tied = inserted.prefix(r) - below;
      // j has larger time; concordant when the shorter-lived i carries
      // the higher risk
      numerator += static_cast<double>(below) + 0.5 * static_cast<double>(tied);
      denominator += n_inserted;
    }
    for (std::size_t k = i; k <= j; ++k) {
      inserted.add(rank[order[k]]);
      ++n_inserted;
    }
    i = j + 1;
  }

  if (denominator == 0) throw NoComparablePairsError();
  return numerator / static_cast<double>(denominator);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  if (a.size() < 3) throw EmptyInputError();
  const auto ra = midranks(a);
  const auto rb = midranks(b);
  const double ma = mean(ra), mb = mean(rb);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - ma, db = rb[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw ConstantInputError();
  return sab / std::sqrt(saa * sbb);
}

std::vector<bool> fdr_select(std::span<const double> p_values, double q) {
  const std::size_t m = p_values.size();
  std::vector<bool> reject(m, false);
  if (m == 0) return reject;
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p-value outside [0, 1]");

  std::vector<double> sorted(p_values.begin(), p_values.end());
  std::sort(sorted.begin(), sorted.end());
  double threshold = -1.0;
  for (std::size_t k = m; k >= 1; --k) {
    if (sorted[k - 1] <= static_cast<double>(k) * q / static_cast<double>(m)) {
      threshold = sorted[k - 1];
      break;
    }
  }
  if (threshold < 0.0) return reject;
  for (std::size_t i = 0; i < m; ++i) reject[i] = p_values[i] <= threshold;
  return reject;
}

std::vector<CalibrationBin> calibration_curve(std::span<const double> prob,
                                              std::span<const std::uint8_t> labels,
                                              std::size_t n_bins) {
  check_same_size(prob.size(), labels.size());
  if (n_bins == 0) throw InvalidConfigError("n_bins must be >= 1");
  for (double p : prob)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("probability outside [0, 1]");

  std::vector<double> sum_pred(n_bins, 0.0);
  std::vector<std::size_t> pos(n_bins, 0), count(n_bins, 0);
  for (std::size_t i = 0; i < prob.size(); ++i) {
    auto b = static_cast<std::size_t>(prob[i] * static_cast<double>(n_bins));
    b = std::min(b, n_bins - 1);
    sum_pred[b] += prob[i];
    pos[b] += labels[i] ? 1 : 0;
    ++count[b];
  }

  std::vector<CalibrationBin> out;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    out.push_back({sum_pred[b] / static_cast<double>(count[b]),
                   static_cast<double>(pos[b]) / static_cast<double>(count[b]),
                   count[b]});
  }
  return out;
}

} // namespace survkit
