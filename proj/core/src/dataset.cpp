#include "survkit/dataset.hpp"

#include "survkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace survkit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

} // namespace

std::size_t SurvivalDataset::n_censored() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return !r.event; }));
}

std::vector<double> SurvivalDataset::times() const {
  std::vector<double> t;
  t.reserve(records.size());
  for (const auto& r : records) t.push_back(r.time);
  return t;
}

std::vector<std::uint8_t> SurvivalDataset::events() const {
  std::vector<std::uint8_t> e;
  e.reserve(records.size());
  for (const auto& r : records) e.push_back(r.event ? 1 : 0);
  return e;
}

std::vector<std::uint8_t> SurvivalDataset::labels_2yr(double horizon) const {
  std::vector<std::uint8_t> y;
  y.reserve(records.size());
  for (const auto& r : records) y.push_back(r.event && r.time <= horizon ? 1 : 0);
  return y;
}

std::vector<double> SurvivalDataset::volumes() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) {
    if (!r.volume) throw EmptyInputError();
    v.push_back(*r.volume);
  }
  return v;
}

SurvivalDataset parse_dataset_csv(const std::string& text, const FeatureSchema& schema) {
  schema.validate();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw EmptyDatasetError();

  const auto header = split_line(line);
  std::vector<std::string> expected = {"id", "time", "event"};
  for (const auto& f : schema.features) expected.push_back(f.name);

  bool has_volume = false;
  if (header.size() == expected.size() + 1 && header.back() == "volume")
    has_volume = true;
  else if (header.size() != expected.size())
    throw MissingColumnError(header.size() < expected.size()
                                 ? expected[header.size()]
                                 : header[expected.size()]);
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (header[i] != expected[i]) throw MissingColumnError(expected[i]);

  SurvivalDataset ds;
  ds.schema = schema;
  ds.has_volume = has_volume;

  std::unordered_set<std::string> ids;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw BadValueError(row, "", "expected " + std::to_string(header.size()) +
                                       " cells, got " + std::to_string(cells.size()));
    SurvivalRecord rec;
    rec.id = cells[0];
    if (rec.id.empty()) throw BadValueError(row, "id", "empty id");
    if (!ids.insert(rec.id).second) throw BadValueError(row, "id", "duplicate id");

    const auto t = parse_double(cells[1]);
    if (!t || !std::isfinite(*t) || *t <= 0.0)
      throw BadValueError(row, "time", "time must be a finite positive number");
    rec.time = *t;

    if (cells[2] == "1")
      rec.event = true;
    else if (cells[2] == "0")
      rec.event = false;
    else
      throw BadValueError(row, "event", "event must be 0 or 1");

    for (std::size_t f = 0; f < schema.features.size(); ++f) {
      const auto& spec = schema.features[f];
      const std::string& cell = cells[3 + f];
      if (spec.kind == FeatureKind::Continuous) {
        if (cell.empty())
          throw BadValueError(row, spec.name, "missing continuous value");
        const auto v = parse_double(cell);
        if (!v || !std::isfinite(*v))
          throw BadValueError(row, spec.name, "not a finite number: '" + cell + "'");
        rec.values.emplace_back(*v);
      } else {
        const std::string label = cell.empty() ? kMissingLevel : cell;
        if (!spec.level_index(label))
          throw BadValueError(row, spec.name, "unknown category '" + label + "'");
        rec.values.emplace_back(label);
      }
    }

    if (has_volume) {
      const std::string& cell = cells.back();
      if (!cell.empty()) {
        const auto v = parse_double(cell);
        if (!v || !std::isfinite(*v) || *v < 0.0)
          throw BadValueError(row, "volume", "volume must be a finite number >= 0");
        rec.volume = *v;
      }
    }
    ds.records.push_back(std::move(rec));
  }

  if (ds.records.empty()) throw EmptyDatasetError();
  return ds;
}

SurvivalDataset load_dataset(const std::string& path, const FeatureSchema& schema) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str(), schema);
}

std::string dataset_to_csv(const SurvivalDataset& dataset) {
  std::ostringstream out;
  out << "id,time,event";
  for (const auto& f : dataset.schema.features) out << ',' << f.name;
  if (dataset.has_volume) out << ",volume";
  out << '\n';

  for (const auto& r : dataset.records) {
    out << r.id << ',' << format_double(r.time) << ',' << (r.event ? '1' : '0');
    for (std::size_t f = 0; f < dataset.schema.features.size(); ++f) {
      out << ',';
      const Cell& c = r.values[f];
      if (std::holds_alternative<double>(c))
        out << format_double(std::get<double>(c));
      else if (std::holds_alternative<std::string>(c))
        out << std::get<std::string>(c);
    }
    if (dataset.has_volume) {
      out << ',';
      if (r.volume) out << format_double(*r.volume);
    }
    out << '\n';
  }
  return out.str();
}

void write_dataset(const SurvivalDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write dataset file: " + path);
  out << dataset_to_csv(dataset);
}

std::pair<SurvivalDataset, SurvivalDataset>
split_train_test(const SurvivalDataset& dataset, double fraction, SplitKey key) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DegenerateSplitError("fraction must lie in (0, 1)");
  const std::size_t n = dataset.records.size();
  if (n < 2) throw DegenerateSplitError("need at least 2 records to split");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (key == SplitKey::Id) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dataset.records[a].id < dataset.records[b].id;
    });
  }

  const auto n_train =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n)
    throw DegenerateSplitError("split leaves an empty side");

  SurvivalDataset train, test;
  train.schema = test.schema = dataset.schema;
  train.has_volume = test.has_volume = dataset.has_volume;
  train.split_tag = SplitTag::Train;
  test.split_tag = SplitTag::Test;
  for (std::size_t i = 0; i < n; ++i) {
    auto& dst = (i < n_train) ? train : test;
    dst.records.push_back(dataset.records[order[i]]);
  }

  if (dataset.truth) {
    GeneratorTruth tr_truth = *dataset.truth, te_truth = *dataset.truth;
    tr_truth.risk.clear();
    te_truth.risk.clear();
    for (std::size_t i = 0; i < n; ++i) {
      auto& dst = (i < n_train) ? tr_truth : te_truth;
      dst.risk.push_back(dataset.truth->risk[order[i]]);
    }
    train.truth = std::move(tr_truth);
    test.truth = std::move(te_truth);
  }
  return {std::move(train), std::move(test)};
}

} // namespace survkit
