#pragma once

#include <cstddef>
#include <span>

namespace l2s {

double mean(std::span<const double> values);
/// Sample standard deviation over sqrt(n); 0 for fewer than two values.
double standard_error(std::span<const double> values);
double median(std::span<const double> values);

struct MannWhitneyResult {
  double u = 0.0;        // U for the first sample: #(a > b) + 0.5 #(a == b)
  double z = 0.0;        // normal approximation, tie-corrected, no continuity correction
  double p_value = 1.0;  // two-sided
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b);

}  // namespace l2s
