#pragma once

#include <map>
#include <span>

#include "windfit/distributions.hpp"

namespace windfit::power {

struct PowerConfig {
    double rho = 1.0;    // air density, kg/m^3
    double area = 2.0;   // swept area, m^2; with rho = 1 the prefactor rho*A/2 is 1
    double quad_rel_tol = 1e-8;
    double tail_prob = 1e-9;  // core integration range is [Q(tail), Q(1 - tail)]

    void validate() const;  // throws DomainError
    double prefactor() const noexcept { return 0.5 * rho * area; }
};

struct PowerReport {
    double p_ref = 0.0;
    std::map<FamilyId, double> p_model;
    std::map<FamilyId, double> pde;  // percent
};

/// rho*A/2 * mean(x^3). Throws EmptySample, or DomainError on negative speeds.
double p_ref(std::span<const double> sample, const PowerConfig& cfg = {});

/// rho*A/2 * E[X^3] by adaptive quadrature: the core range between the
/// tail_prob quantiles plus both tails out to the support bounds.
/// Throws DivergentMoment when E[X^3] does not exist (LL3 with omega <= 3,
/// GEV with shape >= 1/3) or the tail integral fails to converge.
double p_model(const DistParams& p, const PowerConfig& cfg = {});

/// |(p_ref - p_model) / p_ref| * 100. Throws ZeroReference unless p_ref > 0.
double pde(double p_ref_val, double p_model_val);

}  // namespace windfit::power
