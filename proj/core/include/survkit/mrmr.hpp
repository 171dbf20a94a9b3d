#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace survkit {

/// Plug-in mutual information (natural log) between a quartile-discretized
/// column and the binary label. Exposed for the selection oracle tests.
double mutual_information_binned(std::span<const double> x, std::span<const int> y_codes,
                                 std::size_t n_codes);

/// Quartile-bin codes for a continuous column (type-7 quantile edges,
/// duplicate edges collapse bins).
std::vector<int> quartile_codes(std::span<const double> x);

/// Greedy MID (mutual information difference) selection: the first
/// feature maximizes MI(feature; label), each next one maximizes
/// MI(feature; label) - mean MI(feature; selected). Ties break toward the
/// lower column index.
std::vector<std::size_t> mrmr_select(const Eigen::MatrixXd& X,
                                     std::span<const std::uint8_t> labels,
                                     std::size_t k);

} // namespace survkit
