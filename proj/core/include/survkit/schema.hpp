#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace survkit {

enum class FeatureKind { Continuous, Categorical };

/// Training-set standardization statistics for a continuous feature.
struct Normalization {
  double mean = 0.0;
  double sd = 1.0; // must be > 0
};

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Continuous;
  /// Categorical only. Always contains the reserved level "missing".
  std::vector<std::string> levels;
  /// Continuous only; filled when standardization stats have been computed.
  std::optional<Normalization> norm;

  std::optional<std::size_t> level_index(const std::string& level) const;
};

/// Ordered feature description shared by every dataset and model.
///
/// Invariants: names unique, every categorical level list contains
/// "missing", any normalization pair has sd > 0.
struct FeatureSchema {
  std::vector<FeatureSpec> features;

  /// Throws InvalidConfigError if an invariant is violated.
  void validate() const;

  const FeatureSpec* find(const std::string& name) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Stable content hash used to pair serialized models with datasets.
  std::uint64_t hash() const;

  bool operator==(const FeatureSchema&) const = default;
};

inline constexpr const char* kMissingLevel = "missing";

/// Reads the key/value schema text format:
///   # comment
///   age: continuous
///   sex: categorical male female
/// The "missing" level is appended to categoricals that do not declare it.
FeatureSchema load_schema(const std::string& path);
void save_schema(const FeatureSchema& schema, const std::string& path);

FeatureSchema parse_schema_text(const std::string& text);
std::string schema_to_text(const FeatureSchema& schema);

} // namespace survkit
