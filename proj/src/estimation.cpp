#include "windfit/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "windfit/error.hpp"

namespace windfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxPolish = 3;
constexpr double kPolishGain = 1e-8;  // relative cost gain worth another restart

double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double log_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

// ---------------------------------------------------------------------------
// Closed-form log-likelihoods. Each returns -inf (or NaN, mapped to -inf by
// the caller) when an observation falls outside the support.

double ll_we3(double mu, double omega, double delta, std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sum_log = 0.0;
    double sum_pow = 0.0;
    for (double xi : x) {
        const double y = xi - delta;
        if (!(y > 0.0)) return -kInf;
        sum_log += std::log(y);
        sum_pow += std::pow(y / mu, omega);  // mu^-omega (x - delta)^omega
    }
    return n * std::log(omega) - n * omega * std::log(mu) + (omega - 1.0) * sum_log - sum_pow;
}

double ll_ll3(double mu, double omega, double delta, std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sum_log = 0.0;
    double sum_sp = 0.0;
    for (double xi : x) {
        const double y = xi - delta;
        if (!(y > 0.0)) return -kInf;
        sum_log += std::log(y);
        sum_sp += softplus(omega * std::log(y / mu));  // ln(1 + ((x - delta)/mu)^omega)
    }
    return n * std::log(omega) - n * omega * std::log(mu) + (omega - 1.0) * sum_log - 2.0 * sum_sp;
}

double ll_ln3(double mu, double omega, double delta, std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sum_log = 0.0;
    double sum_sq = 0.0;
    for (double xi : x) {
        const double y = xi - delta;
        if (!(y > 0.0)) return -kInf;
        const double ly = std::log(y);
        sum_log += ly;
        sum_sq += (ly - mu) * (ly - mu);
    }
    return -0.5 * n * std::log(2.0 * std::numbers::pi) - n * std::log(omega) - sum_log -
           sum_sq / (2.0 * omega * omega);
}

double ll_gev(double mu, double omega, double delta, std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sum = 0.0;
    if (std::abs(mu) < 1e-12) {
        for (double xi : x) {
            const double u = (xi - delta) / omega;
            sum += -u - std::exp(-u);
        }
        return -n * std::log(omega) + sum;
    }
    for (double xi : x) {
        const double mu_u = mu * (xi - delta) / omega;
        if (!(mu_u > -1.0)) return -kInf;
        const double lw = std::log1p(mu_u);  // ln(1 + mu (x - delta)/omega)
        sum += (-1.0 / mu - 1.0) * lw - std::exp(-lw / mu);
    }
    return -n * std::log(omega) + sum;
}

double ll_we3_ll3(double mu, double omega, double delta, double lambda, double beta, double xi,
                  std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double log_lambda = std::log(lambda);
    double sum_log_x = 0.0;
    double sum_log_t = 0.0;
    double sum_pow = 0.0;
    for (double xv : x) {
        const double y = xv - xi;
        if (!(y > 0.0)) return -kInf;
        const double s = y / lambda;
        const double d = std::pow(s, beta) - delta;  // ((x - xi)^beta - delta lambda^beta) / lambda^beta
        if (!(d > 0.0)) return -kInf;
        sum_log_x += std::log(y);
        sum_log_t += beta * log_lambda + std::log(d);  // ln[(x - xi)^beta - delta lambda^beta]
        sum_pow += std::pow(d / mu, omega);
    }
    return n * std::log(omega) - n * omega * std::log(mu) + n * std::log(beta) + (beta - 1.0) * sum_log_x -
           n * omega * beta * log_lambda + (omega - 1.0) * sum_log_t - sum_pow;
}

double ll_ll3_we3(double mu, double omega, double delta, double lambda, double beta, double xi,
                  std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double log_mu = std::log(mu);
    double sum_log_x = 0.0;
    double sum_z = 0.0;
    double sum_log_a = 0.0;
    double sum_log_ab = 0.0;
    for (double xv : x) {
        const double y = xv - xi;
        if (!(y > 0.0)) return -kInf;
        const double z = std::pow(y / lambda, beta);
        // A = 1 - (1 + delta) e^-z,  B = mu e^-z
        const double log_a = std::log1p(-(1.0 + delta) * std::exp(-z));
        if (!(log_a > -kInf)) return -kInf;
        const double log_b = log_mu - z;
        sum_log_x += std::log(y);
        sum_z += z;
        sum_log_a += log_a;
        sum_log_ab += log_add_exp(omega * log_a, omega * log_b);  // ln[A^omega + B^omega]
    }
    return n * std::log(omega) + n * std::log(beta) - n * beta * std::log(lambda) + (beta - 1.0) * sum_log_x +
           n * omega * log_mu - omega * sum_z + (omega - 1.0) * sum_log_a - 2.0 * sum_log_ab;
}

// ---------------------------------------------------------------------------

struct Moments {
    double min;
    double max;
    double mean;
    double sd;
};

Moments moments(std::span<const double> x) {
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {*mn, *mx, mean, std::sqrt(ss / std::max(n - 1.0, 1.0))};
}

double sorted_quantile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Weibull scale/shape matched to the mean and sd of y > 0.
std::pair<double, double> weibull_moment_fit(std::span<const double> y) {
    const Moments m = moments(y);
    const double cv = m.sd / m.mean;
    const double shape = std::clamp(std::pow(cv, -1.086), 0.2, 50.0);
    const double scale = m.mean / std::tgamma(1.0 + 1.0 / shape);
    return {scale, shape};
}

std::vector<double> guess_with_location(FamilyId family, std::span<const double> sample, double loc) {
    std::vector<double> y(sample.begin(), sample.end());
    for (double& v : y) v -= loc;
    switch (family) {
        case FamilyId::WE3: {
            const auto [scale, shape] = weibull_moment_fit(y);
            return {scale, shape, loc};
        }
        case FamilyId::LL3: {
            std::sort(y.begin(), y.end());
            const double q1 = sorted_quantile(y, 0.25);
            const double q2 = sorted_quantile(y, 0.5);
            const double q3 = sorted_quantile(y, 0.75);
            // log-logistic: ln(Q3 / Q1) = 2 ln 3 / omega
            double shape = q1 > 0.0 && q3 > q1 ? 2.0 * std::log(3.0) / std::log(q3 / q1) : 2.0;
            shape = std::clamp(shape, 1.05, 50.0);
            return {q2, shape, loc};
        }
        case FamilyId::LN3: {
            for (double& v : y) v = std::log(v);
            const Moments m = moments(y);
            return {m.mean, m.sd, loc};
        }
        case FamilyId::GEV: {
            // Gumbel moments; location is the mode, not a lower bound.
            const Moments m = moments(sample);
            const double scale = m.sd * std::sqrt(6.0) / std::numbers::pi;
            return {0.0, scale, m.mean - 0.5772156649015329 * scale};
        }
        case FamilyId::WE3_LL3: {
            // Generator WE3(1, omega_g, 0) on top of LL3(lambda, beta, xi) is a
            // Weibull of shape beta * omega_g; split the shape so beta >= 1.
            const auto [scale, shape] = weibull_moment_fit(y);
            const double beta = std::max(shape, 1.0);
            return {1.0, shape / beta, 0.0, scale, beta, loc};
        }
        case FamilyId::LL3_WE3: {
            // Generator LL3(1, 1, 0) on top of WE3(lambda, beta, xi) is that WE3.
            const auto [scale, shape] = weibull_moment_fit(y);
            return {1.0, 1.0, 0.0, scale, shape, loc};
        }
    }
    return {};
}

}  // namespace

bool feasible_for_fit(FamilyId family, std::span<const double> theta) noexcept {
    if (theta.size() != param_count(family)) return false;
    DistParams p;
    try {
        p = DistParams::from_vector(family, theta);
    } catch (...) {
        return false;
    }
    if (!satisfies_model_constraints(p)) return false;
    switch (family) {
        case FamilyId::WE3:
        case FamilyId::LL3:
            return p.omega <= kMaxExponent;
        case FamilyId::LN3:
            return true;
        case FamilyId::GEV:
            return p.mu > kMinGevShape;
        case FamilyId::WE3_LL3:
        case FamilyId::LL3_WE3:
            return p.omega <= kMaxExponent && *p.beta <= kMaxExponent;
    }
    return false;
}

double loglik(FamilyId family, std::span<const double> theta, std::span<const double> sample) {
    if (sample.empty()) throw EmptySample("log-likelihood of an empty sample");
    if (!feasible_for_fit(family, theta)) return -kInf;
    double ll = -kInf;
    switch (family) {
        case FamilyId::WE3: ll = ll_we3(theta[0], theta[1], theta[2], sample); break;
        case FamilyId::LL3: ll = ll_ll3(theta[0], theta[1], theta[2], sample); break;
        case FamilyId::LN3: ll = ll_ln3(theta[0], theta[1], theta[2], sample); break;
        case FamilyId::GEV: ll = ll_gev(theta[0], theta[1], theta[2], sample); break;
        case FamilyId::WE3_LL3:
            ll = ll_we3_ll3(theta[0], theta[1], theta[2], theta[3], theta[4], theta[5], sample);
            break;
        case FamilyId::LL3_WE3:
            ll = ll_ll3_we3(theta[0], theta[1], theta[2], theta[3], theta[4], theta[5], sample);
            break;
    }
    return std::isnan(ll) ? -kInf : ll;
}

Objective negloglik(FamilyId family, std::span<const double> sample) {
    if (sample.empty()) throw EmptySample("log-likelihood of an empty sample");
    return [family, data = std::vector<double>(sample.begin(), sample.end())](std::span<const double> theta) {
        return -loglik(family, theta, data);
    };
}

std::vector<double> initial_guess(FamilyId family, std::span<const double> sample) {
    std::vector<double> distinct(sample.begin(), sample.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) throw DegenerateSample("all sample values are equal");
    if (distinct.size() < 8) throw DegenerateSample("initial guess needs at least 8 distinct values");

    const Moments m = moments(sample);
    const double range = m.max - m.min;
    double loc = m.min - 0.1 * range;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto theta = guess_with_location(family, sample, loc);
        if (std::isfinite(loglik(family, theta, sample))) return theta;
        loc -= range;
    }
    throw DegenerateSample("no feasible moment-based starting point for " + std::string(family_name(family)));
}

std::size_t default_starts(FamilyId family) noexcept { return is_composite(family) ? 8 : 1; }

FitResult fit_mle(FamilyId family, std::span<const double> sample, const SimplexConfig& cfg, std::size_t n_starts,
                  std::uint64_t seed) {
    if (sample.empty()) throw EmptySample("cannot fit an empty sample");
    if (n_starts == 0) n_starts = default_starts(family);
    cfg.validate();

    const Objective cost = negloglik(family, sample);
    const std::vector<double> base = initial_guess(family, sample);

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    std::vector<std::vector<double>> starts{base};
    for (std::size_t k = 1; k < n_starts; ++k) {
        std::vector<double> theta(base.size());
        // Infeasible draws are retried with a narrower jitter; components at
        // zero (the neutral generator's delta) often land outside the support.
        double scale = 1.0;
        for (int attempt = 0; attempt < 50; ++attempt, scale *= 0.85) {
            for (std::size_t j = 0; j < base.size(); ++j) {
                const double u = scale * jitter(gen);
                theta[j] = base[j] == 0.0 ? u : base[j] * (1.0 + u);
            }
            if (std::isfinite(cost(theta))) break;
        }
        starts.push_back(theta);
    }

    FitResult result;
    result.start_points = starts;
    double best_cost = kInf;
    for (const auto& start : starts) {
        if (!std::isfinite(cost(start))) continue;
        ++result.n_restarts_used;
        SimplexResult run = nelder_mead(cost, start, cfg);
        std::size_t iterations = run.iterations;
        // Restart from the optimum with a fresh simplex until it stops moving.
        // Restarts share the start's max_iter budget: the composites have
        // ridges toward limiting Weibull fits where the simplex would
        // otherwise crawl for tens of thousands of iterations.
        for (int polish = 0; polish < kMaxPolish && iterations < cfg.max_iter; ++polish) {
            SimplexConfig rest = cfg;
            rest.max_iter = cfg.max_iter - iterations;
            SimplexResult again = nelder_mead(cost, run.point, rest);
            iterations += again.iterations;
            const double gain = run.cost - again.cost;
            run.point = std::move(again.point);
            run.cost = again.cost;
            run.converged = again.converged;
            if (!(gain > kPolishGain * (1.0 + std::abs(run.cost)))) break;
        }
        if (run.cost < best_cost) {
            best_cost = run.cost;
            result.params = DistParams::from_vector(family, run.point);
            result.loglik = -run.cost;
            result.iterations = iterations;
            result.converged = run.converged;
        }
    }
    if (!std::isfinite(best_cost))
        throw AllStartsInfeasible("no starting point has a finite likelihood for " + std::string(family_name(family)));
    return result;
}

}  // namespace windfit
