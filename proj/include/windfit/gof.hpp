#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "windfit/distributions.hpp"

namespace windfit::gof {

struct GofConfig {
    /// Plotting-position constant a in F_j = (j - a) / (n - 2a + 1), 0 <= a <= 1.
    double plotting_a = 0.0;
    /// R^2 normally centres on the mean of the predicted probabilities; set
    /// this to centre on the mean of the empirical ones instead.
    bool r2_standard = false;

    void validate() const;  // throws DomainError
};

/// Empirical and model probabilities at the ascending order statistics.
struct ProbabilityPairs {
    std::vector<double> empirical;
    std::vector<double> predicted;
    std::size_t n() const noexcept { return empirical.size(); }
};

struct GofReport {
    double ks = 0.0;
    double r2 = 0.0;
    double rmse = 0.0;
    double chi2 = 0.0;
    std::optional<std::size_t> rank;
};

/// F_j = (j - a) / (n - 2a + 1) for j = 1..n. Only the sample size matters;
/// duplicate values keep distinct ranks.
std::vector<double> empirical_cdf(std::size_t n, const GofConfig& cfg = {});

/// Sorts the sample and pairs plotting positions with cdf(p, x_(j)).
ProbabilityPairs make_pairs(std::span<const double> sample, const DistParams& p, const GofConfig& cfg = {});

// All statistics throw LengthMismatch when the two sides differ in length or
// are empty.
double rmse(const ProbabilityPairs& pairs);
/// Throws ZeroVariance when the denominator vanishes.
double r_squared(const ProbabilityPairs& pairs, bool standard = false);
/// sup_j |F_j - Fhat_j| over the order statistics.
double ks_stat(const ProbabilityPairs& pairs);
/// sum_j (F_j - Fhat_j)^2 / Fhat_j over all order statistics (no binning).
/// Throws ZeroPredicted if some Fhat_j is 0.
double chi2_stat(const ProbabilityPairs& pairs);

GofReport evaluate(const ProbabilityPairs& pairs, const GofConfig& cfg = {});
GofReport evaluate(std::span<const double> sample, const DistParams& p, const GofConfig& cfg = {});

enum class RankRule {
    /// Order by KS; ties by the sum of per-criterion ranks, then by family.
    KsFirst,
    /// Order by the sum of per-criterion ranks; ties by KS, then by family.
    RankSum,
};

/// Fills `rank` with a permutation of 1..k. Per-criterion ranks are KS, RMSE
/// and chi^2 ascending and R^2 descending.
std::vector<std::pair<FamilyId, GofReport>> rank_models(std::vector<std::pair<FamilyId, GofReport>> reports,
                                                        RankRule rule = RankRule::KsFirst);

}  // namespace windfit::gof
