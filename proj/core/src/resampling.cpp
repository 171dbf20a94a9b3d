#include "survkit/resampling.hpp"

#include "survkit/error.hpp"
#include "survkit/rng.hpp"
#include "survkit/stats_util.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace survkit {

const char* metric_name(MetricKind kind) {
  switch (kind) {
  case MetricKind::Auroc: return "auroc";
  case MetricKind::AveragePrecision: return "ap";
  case MetricKind::ConcordanceIndex: return "c_index";
  }
  return "?";
}

double compute_metric(MetricKind kind, const MetricData& data) {
  switch (kind) {
  case MetricKind::Auroc: return auroc(data.score, data.label);
  case MetricKind::AveragePrecision: return average_precision(data.score, data.label);
  case MetricKind::ConcordanceIndex:
    return concordance_index(data.score, data.time, data.event);
  }
  throw Error("unknown metric");
}

namespace {

const std::vector<std::uint8_t>& strata_of(MetricKind kind, const MetricData& d) {
  return kind == MetricKind::ConcordanceIndex ? d.event : d.label;
}

MetricData take(const MetricData& d, const std::vector<std::size_t>& idx,
                MetricKind kind) {
  MetricData out;
  out.score.reserve(idx.size());
  for (auto i : idx) out.score.push_back(d.score[i]);
  if (kind == MetricKind::ConcordanceIndex) {
    out.time.reserve(idx.size());
    out.event.reserve(idx.size());
    for (auto i : idx) {
      out.time.push_back(d.time[i]);
      out.event.push_back(d.event[i]);
    }
  } else {
    out.label.reserve(idx.size());
    for (auto i : idx) out.label.push_back(d.label[i]);
  }
  return out;
}

} // namespace

CiInterval stratified_bootstrap_ci(MetricKind kind, const MetricData& data,
                                   int n_replicates, double level,
                                   std::uint64_t seed) {
  if (n_replicates < 1) throw InvalidConfigError("n_replicates must be >= 1");
  if (!(level > 0.0 && level < 1.0))
    throw InvalidConfigError("level must lie in (0, 1)");
  (void)compute_metric(kind, data); // surface metric errors before resampling

  const auto& strata = strata_of(kind, data);
  std::vector<std::size_t> members[2];
  for (std::size_t i = 0; i < strata.size(); ++i)
    members[strata[i] ? 1 : 0].push_back(i);

  std::vector<double> replicates(static_cast<std::size_t>(n_replicates));
  for (int r = 0; r < n_replicates; ++r) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(r));
    std::vector<std::size_t> idx;
    idx.reserve(strata.size());
    for (const auto& group : members) {
      if (group.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
      for (std::size_t k = 0; k < group.size(); ++k) idx.push_back(group[pick(rng)]);
    }
    replicates[static_cast<std::size_t>(r)] = compute_metric(kind, take(data, idx, kind));
  }

  const double alpha = 1.0 - level;
  CiInterval ci;
  ci.lo = quantile_type7(replicates, alpha / 2.0);
  ci.hi = quantile_type7(std::move(replicates), 1.0 - alpha / 2.0);
  return ci;
}

double permutation_test(MetricKind kind, const MetricData& data, int n_perm,
                        std::uint64_t seed) {
  if (n_perm < 1) throw InvalidConfigError("n_perm must be >= 1");
  const double observed = compute_metric(kind, data);

  const std::size_t n = data.score.size();
  std::size_t exceed = 0;
  for (int r = 0; r < n_perm; ++r) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(r));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);

    MetricData shuffled;
    shuffled.score = data.score;
    if (kind == MetricKind::ConcordanceIndex) {
      shuffled.time.reserve(n);
      shuffled.event.reserve(n);
      for (auto i : perm) {
        shuffled.time.push_back(data.time[i]);
        shuffled.event.push_back(data.event[i]);
      }
    } else {
      shuffled.label.reserve(n);
      for (auto i : perm) shuffled.label.push_back(data.label[i]);
    }
    if (compute_metric(kind, shuffled) >= observed) ++exceed;
  }
  return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(n_perm) + 1.0);
}

} // namespace survkit
