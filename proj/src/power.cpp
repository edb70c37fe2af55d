#include "windfit/power.hpp"

#include <algorithm>
#include <cmath>

#include "windfit/error.hpp"
#include "windfit/quadrature.hpp"

namespace windfit::power {

namespace {
// Span of s = log(tail_prob / r) integrated numerically in each tail.
constexpr double kTailSpan = 600.0;
// Decay rates below this in s mean a moment too close to divergence to trust.
constexpr double kMinTailRate = 1e-4;
}  // namespace

void PowerConfig::validate() const {
    if (!(rho > 0.0)) throw DomainError("air density must be > 0");
    if (!(area > 0.0)) throw DomainError("swept area must be > 0");
    if (!(quad_rel_tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
    if (!(tail_prob > 0.0 && tail_prob < 1e-3)) throw DomainError("tail probability must lie in (0, 1e-3)");
}

double p_ref(std::span<const double> sample, const PowerConfig& cfg) {
    cfg.validate();
    if (sample.empty()) throw EmptySample("reference power density of an empty sample");
    double sum = 0.0;
    for (double x : sample) {
        if (x < 0.0) throw DomainError("negative wind speed in reference power density");
        sum += x * x * x;
    }
    return cfg.prefactor() * sum / static_cast<double>(sample.size());
}

double p_model(const DistParams& p, const PowerConfig& cfg) {
    cfg.validate();
    validate(p);
    if (p.family == FamilyId::LL3 && p.omega <= 3.0)
        throw DivergentMoment("LL3 third moment is infinite for omega <= 3");
    if (p.family == FamilyId::GEV && p.mu >= 1.0 / 3.0)
        throw DivergentMoment("GEV third moment is infinite for shape >= 1/3");

    const double lo = quantile(p, cfg.tail_prob);
    const double hi = quantile(p, 1.0 - cfg.tail_prob);
    auto integrand = [&p](double x) {
        const double f = pdf(p, x);
        return f == 0.0 ? 0.0 : x * x * x * f;
    };

    quad::Options core_opt;
    core_opt.rel_tol = 0.01 * cfg.quad_rel_tol;
    const quad::Result core = quad::integrate(integrand, lo, hi, core_opt);
    if (!core.converged) throw DivergentMoment("third-moment quadrature did not converge on the core range");

    // Tails are integrated in probability space: with tail mass
    // r = tail_prob * e^-s the tail moment is tail_prob * int_0^inf Q(r)^3 e^-s ds.
    // A power-law tail turns into exponential decay in s, so past kTailSpan
    // the remainder is closed with the local decay rate.
    const double log_tp = std::log(cfg.tail_prob);
    quad::Options tail_opt;
    tail_opt.rel_tol = 0.01 * cfg.quad_rel_tol;
    tail_opt.abs_tol = 0.01 * cfg.quad_rel_tol * std::max(std::abs(core.value), 1e-300) / cfg.tail_prob;
    tail_opt.max_intervals = 4000;
    double tails = 0.0;
    for (Tail tail : {Tail::Lower, Tail::Upper}) {
        auto g = [&p, log_tp, tail](double s) {
            // x^3 e^-s in logs: near a divergent moment x^3 alone overflows.
            const double x = tail_quantile(p, log_tp - s, tail);
            if (x == 0.0) return 0.0;
            return std::copysign(std::exp(3.0 * std::log(std::abs(x)) - s), x);
        };
        const quad::Result r = quad::integrate(g, 0.0, kTailSpan, tail_opt);
        const double g_end = g(kTailSpan);
        double rest = 0.0;
        if (g_end != 0.0) {
            const double rate = std::log(g(kTailSpan - 1.0) / g_end);
            if (!(rate > kMinTailRate)) throw DivergentMoment("third moment of " + to_string(p) + " does not converge");
            rest = g_end / rate;
        }
        if (!r.converged || !std::isfinite(r.value) || !std::isfinite(rest))
            throw DivergentMoment("third moment of " + to_string(p) + " does not converge");
        tails += r.value + rest;
    }

    return cfg.prefactor() * (core.value + cfg.tail_prob * tails);
}

double pde(double p_ref_val, double p_model_val) {
    if (!(p_ref_val > 0.0)) throw ZeroReference("reference power density must be > 0");
    return std::abs((p_ref_val - p_model_val) / p_ref_val) * 100.0;
}

}  // namespace windfit::power
