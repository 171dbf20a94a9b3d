#include "survkit/encoding.hpp"

#include "survkit/error.hpp"
#include "survkit/stats_util.hpp"

namespace survkit {

EncodedMatrix EncodedMatrix::select_columns(const std::vector<std::size_t>& indices) const {
  EncodedMatrix out;
  out.ids = ids;
  out.X.resize(X.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= col_labels.size())
      throw ShapeMismatchError("column index out of range");
    out.X.col(static_cast<Eigen::Index>(j)) = X.col(static_cast<Eigen::Index>(indices[j]));
    out.col_labels.push_back(col_labels[indices[j]]);
  }
  return out;
}

std::vector<Normalization> training_stats(const SurvivalDataset& stats_from,
                                          bool include_volume) {
  if (stats_from.records.empty()) throw EmptyDatasetError();
  std::vector<Normalization> stats;
  for (std::size_t f = 0; f < stats_from.schema.features.size(); ++f) {
    const auto& spec = stats_from.schema.features[f];
    if (spec.kind != FeatureKind::Continuous) continue;
    std::vector<double> col;
    col.reserve(stats_from.records.size());
    for (const auto& r : stats_from.records) col.push_back(std::get<double>(r.values[f]));
    Normalization n;
    n.mean = mean(col);
    n.sd = col.size() > 1 ? sample_sd(col) : 0.0;
    if (n.sd <= 0.0) throw ZeroVarianceError(spec.name);
    stats.push_back(n);
  }
  if (include_volume) {
    std::vector<double> vol = stats_from.volumes();
    Normalization n;
    n.mean = mean(vol);
    n.sd = vol.size() > 1 ? sample_sd(vol) : 0.0;
    if (n.sd <= 0.0) throw ZeroVarianceError("volume");
    stats.push_back(n);
  }
  return stats;
}

EncodedMatrix encode_with_stats(const SurvivalDataset& dataset,
                                const std::vector<Normalization>& stats,
                                bool include_volume) {
  const auto& schema = dataset.schema;
  std::size_t d = 0;
  std::size_t n_cont = 0;
  for (const auto& f : schema.features) {
    if (f.kind == FeatureKind::Continuous) {
      ++d;
      ++n_cont;
    } else {
      d += f.levels.size();
    }
  }
  if (include_volume) ++d;
  if (stats.size() != n_cont + (include_volume ? 1 : 0))
    throw ShapeMismatchError("normalization stats do not match schema");

  EncodedMatrix m;
  m.X.setZero(static_cast<Eigen::Index>(dataset.records.size()),
              static_cast<Eigen::Index>(d));
  for (const auto& f : schema.features) {
    if (f.kind == FeatureKind::Continuous) {
      m.col_labels.push_back(f.name);
    } else {
      for (const auto& l : f.levels) m.col_labels.push_back(f.name + "=" + l);
    }
  }
  if (include_volume) m.col_labels.emplace_back("volume");

  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const auto& rec = dataset.records[i];
    m.ids.push_back(rec.id);
    std::size_t col = 0, stat = 0;
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
      const auto& spec = schema.features[f];
      if (spec.kind == FeatureKind::Continuous) {
        const double raw = std::get<double>(rec.values[f]);
        m.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
            (raw - stats[stat].mean) / stats[stat].sd;
        ++col;
        ++stat;
      } else {
        const Cell& c = rec.values[f];
        const std::string label =
            cell_absent(c) ? kMissingLevel : std::get<std::string>(c);
        const auto li = spec.level_index(label);
        if (!li) throw BadValueError(i + 1, spec.name, "unknown category '" + label + "'");
        m.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col + *li)) = 1.0;
        col += spec.levels.size();
      }
    }
    if (include_volume) {
      if (!rec.volume) throw BadValueError(i + 1, "volume", "volume required but absent");
      m.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
          (*rec.volume - stats.back().mean) / stats.back().sd;
    }
  }
  return m;
}

EncodedMatrix encode(const SurvivalDataset& dataset, const SurvivalDataset& stats_from,
                     bool include_volume) {
  if (dataset.schema != stats_from.schema)
    throw ShapeMismatchError("dataset and stats_from schemas differ");
  return encode_with_stats(dataset, training_stats(stats_from, include_volume),
                           include_volume);
}

} // namespace survkit
