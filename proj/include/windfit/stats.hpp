#pragma once

#include <cstddef>
#include <span>

namespace windfit::stats {

struct DescriptiveStats {
    std::size_t n = 0;
    double max = 0.0;
    double mean = 0.0;
    double sd = 0.0;        // n - 1 divisor
    double se_mean = 0.0;   // sd / sqrt(n)
    double skewness = 0.0;  // m3 / m2^(3/2)
    double kurtosis = 0.0;  // m4 / m2^2, normal = 3
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
};

/// Linear-interpolation quantile at position 1 + (n - 1) p of the sorted data.
double quantile_linear(std::span<const double> sorted, double p);

/// Throws InsufficientData for fewer than two values.
DescriptiveStats describe(std::span<const double> sample);

}  // namespace windfit::stats
