#include "survkit/ensemble.hpp"

#include "survkit/error.hpp"
#include "survkit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace survkit {

PredictionSet ensemble_average(const std::vector<PredictionSet>& members) {
  if (members.empty()) throw EmptyListError();
  const auto& first = members.front();
  const std::size_t n = first.size();

  // align every member to the first member's id order
  std::vector<std::vector<std::size_t>> index(members.size());
  index[0].resize(n);
  std::iota(index[0].begin(), index[0].end(), std::size_t{0});
  for (std::size_t m = 1; m < members.size(); ++m) {
    if (members[m].size() != n)
      throw IdMismatchError("member '" + members[m].name + "' has different size");
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < n; ++i) where[members[m].ids[i]] = i;
    index[m].reserve(n);
    for (const auto& id : first.ids) {
      const auto it = where.find(id);
      if (it == where.end())
        throw IdMismatchError("member '" + members[m].name + "' missing id: " + id);
      index[m].push_back(it->second);
    }
  }

  PredictionSet out;
  out.name = "ensemble";
  out.ids = first.ids;
  out.prob_2yr.assign(n, 0.0);
  out.risk.emplace(n, 0.0);

  std::size_t curve_members = 0;
  for (const auto& m : members) curve_members += m.curves ? 1 : 0;
  if (curve_members > 0) out.curves.emplace(n);

  for (std::size_t i = 0; i < n; ++i) {
    double prob_sum = 0.0, risk_sum = 0.0;
    std::array<double, 24> curve_sum{};
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::size_t j = index[m][i];
      prob_sum += members[m].prob_2yr[j];
      // the 2-year event probability stands in for a missing risk score
      risk_sum += members[m].risk ? (*members[m].risk)[j] : members[m].prob_2yr[j];
      if (members[m].curves)
        for (std::size_t k = 0; k < 24; ++k) curve_sum[k] += (*members[m].curves)[j][k];
    }
    const auto count = static_cast<double>(members.size());
    out.prob_2yr[i] = prob_sum / count;
    (*out.risk)[i] = risk_sum / count;
    if (curve_members > 0)
      for (std::size_t k = 0; k < 24; ++k)
        (*out.curves)[i][k] = curve_sum[k] / static_cast<double>(curve_members);
  }
  return out;
}

std::vector<std::size_t> rank_predictions(const std::vector<PredictionSet>& members,
                                          const TruthSet& truth) {
  struct Scored {
    std::size_t index;
    double auroc_v;
    double ap_v;
  };
  std::vector<Scored> scored;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto aligned = align_to_truth(members[m], truth);
    scored.push_back({m, auroc(aligned.prob_2yr, truth.label_2yr),
                      average_precision(aligned.prob_2yr, truth.label_2yr)});
  }
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.auroc_v != b.auroc_v) return a.auroc_v > b.auroc_v;
    if (a.ap_v != b.ap_v) return a.ap_v > b.ap_v;
    return members[a.index].name < members[b.index].name;
  });
  std::vector<std::size_t> order;
  for (const auto& s : scored) order.push_back(s.index);
  return order;
}

std::vector<double> partial_ensembles(const std::vector<PredictionSet>& ranked,
                                      const TruthSet& truth) {
  if (ranked.empty()) throw EmptyListError();
  std::vector<double> out;
  std::vector<PredictionSet> prefix;
  for (const auto& member : ranked) {
    prefix.push_back(member);
    const auto ens = align_to_truth(ensemble_average(prefix), truth);
    out.push_back(auroc(ens.prob_2yr, truth.label_2yr));
  }
  return out;
}

std::vector<VolumeAuditRow>
volume_correlation_audit(const std::vector<PredictionSet>& members,
                         const std::vector<double>& volumes, const TruthSet& truth) {
  if (volumes.size() != truth.size())
    throw ShapeMismatchError("volumes not aligned with truth");
  std::vector<VolumeAuditRow> rows;
  for (const auto& member : members) {
    const auto aligned = align_to_truth(member, truth);
    VolumeAuditRow row;
    row.name = member.name;
    row.spearman_volume = spearman(aligned.prob_2yr, volumes);
    row.auroc = auroc(aligned.prob_2yr, truth.label_2yr);
    row.c_index = concordance_index(aligned.effective_risk(), truth.time, truth.event);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string volume_audit_csv(const std::vector<VolumeAuditRow>& rows) {
  auto fmt = [](double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  std::ostringstream out;
  out << "name,spearman_volume,auroc,c_index\n";
  for (const auto& r : rows)
    out << r.name << ',' << fmt(r.spearman_volume) << ',' << fmt(r.auroc) << ','
        << fmt(r.c_index) << '\n';
  return out.str();
}

} // namespace survkit
