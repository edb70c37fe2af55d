#include "windfit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "windfit/error.hpp"

namespace windfit::stats {

double quantile_linear(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InsufficientData("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

DescriptiveStats describe(std::span<const double> sample) {
    if (sample.size() < 2) throw InsufficientData("descriptive statistics need at least two values");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    DescriptiveStats d;
    d.n = sorted.size();
    const double n = static_cast<double>(d.n);
    d.max = sorted.back();

    // Two passes: mean first, then central moments.
    double sum = 0.0;
    for (double x : sorted) sum += x;
    d.mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : sorted) {
        const double c = x - d.mean;
        const double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    d.sd = std::sqrt(m2 / (n - 1.0));
    d.se_mean = d.sd / std::sqrt(n);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 0.0) {
        d.skewness = m3 / std::pow(m2, 1.5);
        d.kurtosis = m4 / (m2 * m2);
    } else {
        d.skewness = std::nan("");
        d.kurtosis = std::nan("");
    }
    d.q1 = quantile_linear(sorted, 0.25);
    d.q2 = quantile_linear(sorted, 0.5);
    d.q3 = quantile_linear(sorted, 0.75);
    return d;
}

}  // namespace windfit::stats
