#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace windfit {

/// Cost function over a parameter vector. Infeasible points return +inf
/// (NaN is treated the same way).
using Objective = std::function<double(std::span<const double>)>;

struct SimplexConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    std::size_t max_iter = 5000;
    double tol_f = 1e-10;  // stop once max - min vertex cost is below this
    double tol_x = 1e-8;   // and every vertex is this close to the best one
    bool record_history = false;

    /// Throws DomainError when a coefficient is out of range.
    void validate() const;
};

struct SimplexResult {
    std::vector<double> point;
    double cost = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::vector<double> best_history;  // best vertex cost after each iteration, if recorded
};

/// Derivative-free minimisation by the Nelder-Mead simplex method.
///
/// The initial simplex is `start` plus one vertex per coordinate, offset by
/// max(0.05 |start_j|, 0.05); if that vertex is infeasible the offset is
/// mirrored. Throws InfeasibleStart if cost(start) is not finite.
SimplexResult nelder_mead(const Objective& cost, std::span<const double> start, const SimplexConfig& cfg = {});

}  // namespace windfit
