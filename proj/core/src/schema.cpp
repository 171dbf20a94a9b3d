#include "survkit/schema.hpp"

#include "survkit/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace survkit {

std::optional<std::size_t> FeatureSpec::level_index(const std::string& level) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] == level) return i;
  return std::nullopt;
}

void FeatureSchema::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& f : features) {
    if (f.name.empty()) throw InvalidConfigError("feature with empty name");
    if (!seen.insert(f.name).second)
      throw InvalidConfigError("duplicate feature name: " + f.name);
    if (f.kind == FeatureKind::Categorical) {
      if (std::find(f.levels.begin(), f.levels.end(), kMissingLevel) == f.levels.end())
        throw InvalidConfigError("categorical feature '" + f.name +
                                 "' lacks reserved level 'missing'");
      std::unordered_set<std::string> lv(f.levels.begin(), f.levels.end());
      if (lv.size() != f.levels.size())
        throw InvalidConfigError("duplicate level in feature: " + f.name);
    } else if (f.norm && f.norm->sd <= 0.0) {
      throw InvalidConfigError("normalization sd must be > 0 for: " + f.name);
    }
  }
}

const FeatureSpec* FeatureSchema::find(const std::string& name) const {
  for (const auto& f : features)
    if (f.name == name) return &f;
  return nullptr;
}

std::optional<std::size_t> FeatureSchema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < features.size(); ++i)
    if (features[i].name == name) return i;
  return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= 0x1f; // field separator
  h *= 0x100000001b3ULL;
  return h;
}

} // namespace

std::uint64_t FeatureSchema::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : features) {
    h = fnv1a(h, f.name);
    h = fnv1a(h, f.kind == FeatureKind::Continuous ? "continuous" : "categorical");
    for (const auto& l : f.levels) h = fnv1a(h, l);
  }
  return h;
}

FeatureSchema parse_schema_text(const std::string& text) {
  FeatureSchema schema;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw FormatError("schema line " + std::to_string(lineno) +
                        ": expected 'name: kind [levels...]'");
    FeatureSpec spec;
    spec.name = line.substr(first, colon - first);
    while (!spec.name.empty() && (spec.name.back() == ' ' || spec.name.back() == '\t'))
      spec.name.pop_back();

    std::istringstream rest(line.substr(colon + 1));
    std::string kind;
    rest >> kind;
    if (kind == "continuous") {
      spec.kind = FeatureKind::Continuous;
      std::string extra;
      if (rest >> extra)
        throw FormatError("schema line " + std::to_string(lineno) +
                          ": continuous feature takes no levels");
    } else if (kind == "categorical") {
      spec.kind = FeatureKind::Categorical;
      std::string level;
      while (rest >> level) spec.levels.push_back(level);
      if (spec.levels.empty())
        throw FormatError("schema line " + std::to_string(lineno) +
                          ": categorical feature needs at least one level");
      if (std::find(spec.levels.begin(), spec.levels.end(), kMissingLevel) ==
          spec.levels.end())
        spec.levels.emplace_back(kMissingLevel);
    } else {
      throw FormatError("schema line " + std::to_string(lineno) +
                        ": unknown kind '" + kind + "'");
    }
    schema.features.push_back(std::move(spec));
  }
  schema.validate();
  return schema;
}

std::string schema_to_text(const FeatureSchema& schema) {
  std::ostringstream out;
  for (const auto& f : schema.features) {
    out << f.name << ": "
        << (f.kind == FeatureKind::Continuous ? "continuous" : "categorical");
    for (const auto& l : f.levels) out << ' ' << l;
    out << '\n';
  }
  return out.str();
}

FeatureSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open schema file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schema_text(buf.str());
}

void save_schema(const FeatureSchema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write schema file: " + path);
  out << schema_to_text(schema);
}

} // namespace survkit
