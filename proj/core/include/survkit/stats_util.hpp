#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace survkit {

double mean(std::span<const double> x);

/// Sample standard deviation (n - 1 denominator).
double sample_sd(std::span<const double> x);

/// Type-7 (linear interpolation) quantile of an unsorted sample, p in [0, 1].
double quantile_type7(std::vector<double> x, double p);

/// Mid-ranks (1-based, ties get the average rank of their tie group).
std::vector<double> midranks(std::span<const double> x);

/// Standard normal CDF.
double normal_cdf(double z);

} // namespace survkit
