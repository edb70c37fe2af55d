#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "windfit/distributions.hpp"
#include "windfit/nelder_mead.hpp"

namespace windfit {

/// Upper bound on the exponent parameters while fitting. Unbounded exponents
/// let the likelihood run off to a spike at min(x).
inline constexpr double kMaxExponent = 200.0;

/// Lower bound on the GEV shape while fitting; below -1 the likelihood is
/// unbounded as the upper endpoint approaches max(x).
inline constexpr double kMinGevShape = -1.0;

/// Whether theta is an admissible estimate: valid parameters, the model
/// constraints (LL3 omega >= 1, WE3_LL3 beta >= 1, LL3_WE3 omega >= 1) and
/// the fitting bounds above.
bool feasible_for_fit(FamilyId family, std::span<const double> theta) noexcept;

/// Closed-form log-likelihood of the sample, or -inf when theta is not
/// feasible_for_fit or an observation lies outside the support.
double loglik(FamilyId family, std::span<const double> theta, std::span<const double> sample);

/// -loglik as an optimiser objective. The returned handle owns a copy of the
/// sample.
Objective negloglik(FamilyId family, std::span<const double> sample);

/// Moment-based starting point. The location is placed below the sample at
/// min - 0.1 (max - min). Composites start from a WE3 moment fit used as the
/// transformer together with a neutral generator (mu = 1, omega = 1,
/// delta = 0), which reproduces that WE3 exactly.
/// Throws DegenerateSample when the sample has fewer than 8 distinct values.
std::vector<double> initial_guess(FamilyId family, std::span<const double> sample);

struct FitResult {
    DistParams params;
    double loglik = 0.0;
    std::size_t iterations = 0;  // simplex iterations spent on the winning start
    bool converged = false;
    std::size_t n_restarts_used = 0;  // starting points that were optimised
    std::vector<std::vector<double>> start_points;
};

/// 1 for the three-parameter families, 8 for the composites.
std::size_t default_starts(FamilyId family) noexcept;

/// Maximum likelihood by Nelder-Mead from `n_starts` starting points: the
/// initial guess, then copies jittered by up to +-20% (seeded). Each run is
/// restarted from its own optimum until it stops improving. The best run
/// wins; ties go to the earlier start. cfg.max_iter bounds the simplex
/// iterations per start, restarts included.
/// Throws AllStartsInfeasible if no starting point has a finite likelihood.
FitResult fit_mle(FamilyId family, std::span<const double> sample, const SimplexConfig& cfg = {},
                  std::size_t n_starts = 0, std::uint64_t seed = 42);

}  // namespace windfit
