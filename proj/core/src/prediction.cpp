#include "survkit/prediction.hpp"

#include "survkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

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

double parse_double_or_throw(const std::string& s, std::size_t row, const std::string& col) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw BadValueError(row, col, "not a finite number: '" + s + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

} // namespace

std::vector<double> PredictionSet::effective_risk() const {
  if (risk) return *risk;
  return prob_2yr;
}

void PredictionSet::validate() const {
  if (ids.empty()) throw FormatError("prediction set is empty");
  if (prob_2yr.size() != ids.size())
    throw FormatError("prob_2yr length does not match ids");
  if (risk && risk->size() != ids.size())
    throw FormatError("risk length does not match ids");
  if (curves && curves->size() != ids.size())
    throw FormatError("curves length does not match ids");
  for (double p : prob_2yr)
    if (!(p >= 0.0 && p <= 1.0))
      throw FormatError("prob_2yr outside [0, 1]: " + std::to_string(p));
  if (risk)
    for (double r : *risk)
      if (!std::isfinite(r)) throw FormatError("non-finite risk value");
  if (curves) {
    for (const auto& c : *curves) {
      if (!(c[0] <= 1.0)) throw FormatError("survival curve starts above 1");
      for (std::size_t m = 0; m < 24; ++m) {
        if (!(c[m] >= 0.0 && c[m] <= 1.0))
          throw FormatError("survival value outside [0, 1]");
        if (m > 0 && c[m] > c[m - 1] + 1e-12)
          throw FormatError("survival curve increases at month " + std::to_string(m));
      }
    }
  }
}

std::string prediction_to_csv(const PredictionSet& preds) {
  std::ostringstream out;
  out << "id,prob_2yr";
  if (preds.risk) out << ",risk";
  if (preds.curves)
    for (int m = 0; m < 24; ++m) out << ",surv_m" << m;
  out << '\n';
  for (std::size_t i = 0; i < preds.ids.size(); ++i) {
    out << preds.ids[i] << ',' << format_double(preds.prob_2yr[i]);
    if (preds.risk) out << ',' << format_double((*preds.risk)[i]);
    if (preds.curves)
      for (int m = 0; m < 24; ++m)
        out << ',' << format_double((*preds.curves)[i][static_cast<std::size_t>(m)]);
    out << '\n';
  }
  return out.str();
}

PredictionSet parse_prediction_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty prediction file");
  const auto header = split_line(line);
  if (header.empty() || header[0] != "id" || header.size() < 2 || header[1] != "prob_2yr")
    throw FormatError("prediction header must start with id,prob_2yr");

  bool has_risk = false;
  std::size_t curve_start = 0;
  if (header.size() >= 3 && header[2] == "risk") has_risk = true;
  const std::size_t after_risk = has_risk ? 3 : 2;
  if (header.size() > after_risk) {
    if (header.size() != after_risk + 24)
      throw FormatError("expected 24 survival columns surv_m0..surv_m23");
    for (int m = 0; m < 24; ++m)
      if (header[after_risk + static_cast<std::size_t>(m)] != "surv_m" + std::to_string(m))
        throw FormatError("bad survival column header at month " + std::to_string(m));
    curve_start = after_risk;
  }

  PredictionSet preds;
  preds.name = name;
  if (has_risk) preds.risk.emplace();
  if (curve_start > 0) preds.curves.emplace();

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw BadValueError(row, "", "wrong cell count");
    preds.ids.push_back(cells[0]);
    preds.prob_2yr.push_back(parse_double_or_throw(cells[1], row, "prob_2yr"));
    if (has_risk) preds.risk->push_back(parse_double_or_throw(cells[2], row, "risk"));
    if (curve_start > 0) {
      std::array<double, 24> curve{};
      for (std::size_t m = 0; m < 24; ++m)
        curve[m] = parse_double_or_throw(cells[curve_start + m], row,
                                         "surv_m" + std::to_string(m));
      preds.curves->push_back(curve);
    }
  }
  preds.validate();
  return preds;
}

PredictionSet load_predictions(const std::string& path) {
  return parse_prediction_csv(read_file(path), file_stem(path));
}

void write_predictions(const PredictionSet& preds, const std::string& path) {
  preds.validate();
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write prediction file: " + path);
  out << prediction_to_csv(preds);
}

TruthSet load_truth(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty truth file");
  const auto header = split_line(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "time" ||
      header[2] != "event")
    throw FormatError("truth header must start with id,time,event");
  const bool has_label = header.size() >= 4 && header[3] == "label_2yr";

  TruthSet truth;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) throw BadValueError(row, "", "wrong cell count");
    truth.ids.push_back(cells[0]);
    const double t = parse_double_or_throw(cells[1], row, "time");
    if (t <= 0.0) throw BadValueError(row, "time", "time must be positive");
    truth.time.push_back(t);
    if (cells[2] != "0" && cells[2] != "1")
      throw BadValueError(row, "event", "event must be 0 or 1");
    const bool ev = cells[2] == "1";
    truth.event.push_back(ev ? 1 : 0);
    if (has_label) {
      if (cells[3] != "0" && cells[3] != "1")
        throw BadValueError(row, "label_2yr", "label must be 0 or 1");
      truth.label_2yr.push_back(cells[3] == "1" ? 1 : 0);
    } else {
      truth.label_2yr.push_back(ev && t <= 24.0 ? 1 : 0);
    }
  }
  if (truth.ids.empty()) throw EmptyDatasetError();
  return truth;
}

PredictionSet align_to_truth(const PredictionSet& preds, const TruthSet& truth) {
  if (preds.size() != truth.size())
    throw IdMismatchError("prediction and truth row counts differ (" +
                          std::to_string(preds.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  std::unordered_map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < preds.ids.size(); ++i) where[preds.ids[i]] = i;
  if (where.size() != preds.ids.size())
    throw IdMismatchError("duplicate ids in prediction file");

  PredictionSet out;
  out.name = preds.name;
  if (preds.risk) out.risk.emplace();
  if (preds.curves) out.curves.emplace();
  for (const auto& id : truth.ids) {
    const auto it = where.find(id);
    if (it == where.end()) throw IdMismatchError("prediction missing id: " + id);
    const std::size_t i = it->second;
    out.ids.push_back(id);
    out.prob_2yr.push_back(preds.prob_2yr[i]);
    if (preds.risk) out.risk->push_back((*preds.risk)[i]);
    if (preds.curves) out.curves->push_back((*preds.curves)[i]);
  }
  return out;
}

} // namespace survkit
