#include "windfit/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "windfit/error.hpp"

namespace windfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGumbelThreshold = 1e-12;

double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// The density of every family behaves like c * s^e as s -> 0+ at the lower
// end of its support; this returns the log of that limit at s == 0.
double log_power_limit(double log_c, double e) {
    if (e == 0.0) return log_c;
    return e > 0.0 ? -kInf : kInf;
}

// ---------------------------------------------------------------- WE3

double we3_log_pdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y < 0.0) return -kInf;
    if (y == 0.0) return log_power_limit(std::log(p.omega / p.mu), p.omega - 1.0);
    const double r = y / p.mu;
    return std::log(p.omega / p.mu) + (p.omega - 1.0) * std::log(r) - std::pow(r, p.omega);
}

double we3_cdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return -std::expm1(-std::pow(y / p.mu, p.omega));
}

double we3_log_survival(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return -std::pow(y / p.mu, p.omega);
}

// Quantile kernels take log F and log(1 - F) so that either tail can be
// reached without cancellation.
double we3_quantile(const DistParams& p, double, double log_r) {
    return p.delta + p.mu * std::pow(-log_r, 1.0 / p.omega);
}

// ---------------------------------------------------------------- LL3

double ll3_log_pdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y < 0.0) return -kInf;
    if (y == 0.0) return log_power_limit(std::log(p.omega / p.mu), p.omega - 1.0);
    const double lr = std::log(y / p.mu);
    return std::log(p.omega / p.mu) + (p.omega - 1.0) * lr - 2.0 * softplus(p.omega * lr);
}

double ll3_cdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return logistic(p.omega * std::log(y / p.mu));
}

double ll3_log_survival(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return -softplus(p.omega * std::log(y / p.mu));
}

double ll3_quantile(const DistParams& p, double log_q, double log_r) {
    return p.delta + p.mu * std::exp((log_q - log_r) / p.omega);
}

// ---------------------------------------------------------------- LN3

double ln3_z(const DistParams& p, double y) { return (std::log(y) - p.mu) / p.omega; }

double ln3_log_pdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return -kInf;
    const double z = ln3_z(p, y);
    return -std::log(y) - std::log(p.omega) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * z * z;
}

double ln3_cdf(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return 0.5 * std::erfc(-ln3_z(p, y) / std::numbers::sqrt2);
}

double ln3_log_survival(const DistParams& p, double x) {
    const double y = x - p.delta;
    if (y <= 0.0) return 0.0;
    return std::log(0.5 * std::erfc(ln3_z(p, y) / std::numbers::sqrt2));
}

double standard_normal_quantile(double log_q, double log_r) {
    if (log_q < log_r) return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * std::exp(log_q));
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * std::exp(log_r));
}

double ln3_quantile(const DistParams& p, double log_q, double log_r) {
    return p.delta + std::exp(p.mu + p.omega * standard_normal_quantile(log_q, log_r));
}

// ---------------------------------------------------------------- GEV
// mu is the shape; |mu| below kGumbelThreshold uses the Gumbel limit.

bool gev_is_gumbel(const DistParams& p) { return std::abs(p.mu) < kGumbelThreshold; }

// Returns t(x) = [1 + mu u]^(-1/mu) (or exp(-u)), or nullopt outside the support.
std::optional<double> gev_t(const DistParams& p, double x, double* log_w = nullptr) {
    const double u = (x - p.delta) / p.omega;
    if (gev_is_gumbel(p)) {
        if (log_w) *log_w = 0.0;
        return std::exp(-u);
    }
    const double w = 1.0 + p.mu * u;
    if (!(w > 0.0)) return std::nullopt;
    const double lw = std::log1p(p.mu * u);
    if (log_w) *log_w = lw;
    return std::exp(-lw / p.mu);
}

double gev_log_pdf(const DistParams& p, double x) {
    if (gev_is_gumbel(p)) {
        const double u = (x - p.delta) / p.omega;
        return -std::log(p.omega) - u - std::exp(-u);
    }
    double lw = 0.0;
    const auto t = gev_t(p, x, &lw);
    if (!t) return -kInf;
    if (std::isinf(*t)) return -kInf;
    return -std::log(p.omega) - (1.0 / p.mu + 1.0) * lw - *t;
}

double gev_cdf(const DistParams& p, double x) {
    const auto t = gev_t(p, x);
    if (!t) return p.mu > 0.0 ? 0.0 : 1.0;
    return std::exp(-*t);
}

double gev_log_survival(const DistParams& p, double x) {
    const auto t = gev_t(p, x);
    if (!t) return p.mu > 0.0 ? 0.0 : -kInf;
    return std::log(-std::expm1(-*t));
}

double gev_quantile(const DistParams& p, double log_q, double) {
    const double l = std::log(-log_q);
    if (gev_is_gumbel(p)) return p.delta - p.omega * l;
    return p.delta + p.omega * std::expm1(-p.mu * l) / p.mu;
}

// ---------------------------------------------------------------- WE3-LL3
// F(x) = 1 - exp(-v^omega),  v = (s^beta - delta) / mu,  s = (x - xi) / lambda.

struct We3Ll3Point {
    double s;
    double v;
};

std::optional<We3Ll3Point> we3_ll3_point(const DistParams& p, double x) {
    const double s = (x - *p.xi) / *p.lambda;
    if (s < 0.0) return std::nullopt;
    const double v = (std::pow(s, *p.beta) - p.delta) / p.mu;
    if (v < 0.0) return std::nullopt;
    return We3Ll3Point{s, v};
}

double we3_ll3_log_pdf(const DistParams& p, double x) {
    const auto pt = we3_ll3_point(p, x);
    if (!pt) return -kInf;
    const double beta = *p.beta;
    const double log_c = std::log(beta / *p.lambda) + std::log(p.omega / p.mu);
    if (pt->s == 0.0) {
        // delta == 0: v = s^beta / mu, density ~ s^(beta*omega - 1).
        return log_power_limit(log_c - (p.omega - 1.0) * std::log(p.mu), beta * p.omega - 1.0);
    }
    const double base = log_c + (beta - 1.0) * std::log(pt->s);
    if (pt->v == 0.0) return base + log_power_limit(0.0, p.omega - 1.0);
    return base + (p.omega - 1.0) * std::log(pt->v) - std::pow(pt->v, p.omega);
}

double we3_ll3_cdf(const DistParams& p, double x) {
    const auto pt = we3_ll3_point(p, x);
    if (!pt) return 0.0;
    return -std::expm1(-std::pow(pt->v, p.omega));
}

double we3_ll3_log_survival(const DistParams& p, double x) {
    const auto pt = we3_ll3_point(p, x);
    if (!pt) return 0.0;
    return -std::pow(pt->v, p.omega);
}

double we3_ll3_quantile(const DistParams& p, double, double log_r) {
    const double t = p.mu * std::pow(-log_r, 1.0 / p.omega) + p.delta;
    return *p.xi + *p.lambda * std::pow(t, 1.0 / *p.beta);
}

// ---------------------------------------------------------------- LL3-WE3
// F(x) = 1 / (1 + (mu / g)^omega),  g = e^z - 1 - delta,  z = ((x - xi) / lambda)^beta.
// Everything is carried as log g so that large z never overflows.

struct Ll3We3Point {
    double s;
    double z;
    double log_g;  // -inf on the lower boundary
};

std::optional<Ll3We3Point> ll3_we3_point(const DistParams& p, double x) {
    const double s = (x - *p.xi) / *p.lambda;
    if (s < 0.0) return std::nullopt;
    const double z = std::pow(s, *p.beta);
    double log_g;
    if (z > 30.0) {
        log_g = z + std::log1p(-(1.0 + p.delta) * std::exp(-z));
    } else {
        const double g = std::expm1(z) - p.delta;
        if (g < 0.0) return std::nullopt;
        log_g = std::log(g);
    }
    if (std::isnan(log_g)) return std::nullopt;
    return Ll3We3Point{s, z, log_g};
}

double ll3_we3_log_pdf(const DistParams& p, double x) {
    const auto pt = ll3_we3_point(p, x);
    if (!pt) return -kInf;
    const double beta = *p.beta;
    const double log_c = std::log(beta / *p.lambda) + std::log(p.omega / p.mu);
    if (pt->s == 0.0) {
        // delta == 0: g ~ s^beta, density ~ s^(beta*omega - 1).
        return log_power_limit(log_c - (p.omega - 1.0) * std::log(p.mu), beta * p.omega - 1.0);
    }
    const double base = log_c + (beta - 1.0) * std::log(pt->s) + pt->z;
    if (std::isinf(pt->log_g)) return base + log_power_limit(0.0, p.omega - 1.0);
    const double lu = pt->log_g - std::log(p.mu);
    return base + (p.omega - 1.0) * lu - 2.0 * softplus(p.omega * lu);
}

double ll3_we3_cdf(const DistParams& p, double x) {
    const auto pt = ll3_we3_point(p, x);
    if (!pt) return 0.0;
    return logistic(p.omega * (pt->log_g - std::log(p.mu)));
}

double ll3_we3_log_survival(const DistParams& p, double x) {
    const auto pt = ll3_we3_point(p, x);
    if (!pt) return 0.0;
    return -softplus(p.omega * (pt->log_g - std::log(p.mu)));
}

double ll3_we3_quantile(const DistParams& p, double log_q, double log_r) {
    const double z = std::log1p(p.delta + p.mu * std::exp((log_q - log_r) / p.omega));
    return *p.xi + *p.lambda * std::pow(z, 1.0 / *p.beta);
}

// ---------------------------------------------------------------- dispatch

double log_pdf_unchecked(const DistParams& p, double x) {
    switch (p.family) {
        case FamilyId::WE3: return we3_log_pdf(p, x);
        case FamilyId::LL3: return ll3_log_pdf(p, x);
        case FamilyId::LN3: return ln3_log_pdf(p, x);
        case FamilyId::GEV: return gev_log_pdf(p, x);
        case FamilyId::WE3_LL3: return we3_ll3_log_pdf(p, x);
        case FamilyId::LL3_WE3: return ll3_we3_log_pdf(p, x);
    }
    return -kInf;
}

double cdf_unchecked(const DistParams& p, double x) {
    switch (p.family) {
        case FamilyId::WE3: return we3_cdf(p, x);
        case FamilyId::LL3: return ll3_cdf(p, x);
        case FamilyId::LN3: return ln3_cdf(p, x);
        case FamilyId::GEV: return gev_cdf(p, x);
        case FamilyId::WE3_LL3: return we3_ll3_cdf(p, x);
        case FamilyId::LL3_WE3: return ll3_we3_cdf(p, x);
    }
    return 0.0;
}

double log_survival_unchecked(const DistParams& p, double x) {
    switch (p.family) {
        case FamilyId::WE3: return we3_log_survival(p, x);
        case FamilyId::LL3: return ll3_log_survival(p, x);
        case FamilyId::LN3: return ln3_log_survival(p, x);
        case FamilyId::GEV: return gev_log_survival(p, x);
        case FamilyId::WE3_LL3: return we3_ll3_log_survival(p, x);
        case FamilyId::LL3_WE3: return ll3_we3_log_survival(p, x);
    }
    return 0.0;
}

double quantile_unchecked(const DistParams& p, double log_q, double log_r) {
    switch (p.family) {
        case FamilyId::WE3: return we3_quantile(p, log_q, log_r);
        case FamilyId::LL3: return ll3_quantile(p, log_q, log_r);
        case FamilyId::LN3: return ln3_quantile(p, log_q, log_r);
        case FamilyId::GEV: return gev_quantile(p, log_q, log_r);
        case FamilyId::WE3_LL3: return we3_ll3_quantile(p, log_q, log_r);
        case FamilyId::LL3_WE3: return ll3_we3_quantile(p, log_q, log_r);
    }
    return 0.0;
}

double quantile_unchecked(const DistParams& p, double q) { return quantile_unchecked(p, std::log(q), std::log1p(-q)); }

std::string invalid_reason(const DistParams& p) {
    const bool composite = is_composite(p.family);
    const bool has_tx = p.lambda.has_value() && p.beta.has_value() && p.xi.has_value();
    const bool any_tx = p.lambda.has_value() || p.beta.has_value() || p.xi.has_value();
    if (composite && !has_tx) return "composite family requires lambda, beta and xi";
    if (!composite && any_tx) return "lambda, beta and xi apply only to composite families";
    if (!std::isfinite(p.mu) || !std::isfinite(p.omega) || !std::isfinite(p.delta)) return "non-finite parameter";
    if (composite && (!std::isfinite(*p.lambda) || !std::isfinite(*p.beta) || !std::isfinite(*p.xi)))
        return "non-finite parameter";
    if (!(p.omega > 0.0)) return "omega must be > 0";
    switch (p.family) {
        case FamilyId::WE3:
        case FamilyId::LL3:
            if (!(p.mu > 0.0)) return "mu must be > 0";
            break;
        case FamilyId::LN3:
        case FamilyId::GEV:
            break;
        case FamilyId::WE3_LL3:
        case FamilyId::LL3_WE3:
            if (!(p.mu > 0.0)) return "mu must be > 0";
            if (!(p.delta >= 0.0)) return "delta must be >= 0 for composite families";
            if (!(*p.lambda > 0.0)) return "lambda must be > 0";
            if (!(*p.beta > 0.0)) return "beta must be > 0";
            break;
    }
    return {};
}

}  // namespace

std::string_view family_name(FamilyId f) noexcept {
    switch (f) {
        case FamilyId::WE3: return "WE3";
        case FamilyId::LL3: return "LL3";
        case FamilyId::LN3: return "LN3";
        case FamilyId::GEV: return "GEV";
        case FamilyId::WE3_LL3: return "WE3-LL3";
        case FamilyId::LL3_WE3: return "LL3-WE3";
    }
    return "?";
}

std::string_view family_slug(FamilyId f) noexcept {
    switch (f) {
        case FamilyId::WE3: return "we3";
        case FamilyId::LL3: return "ll3";
        case FamilyId::LN3: return "ln3";
        case FamilyId::GEV: return "gev";
        case FamilyId::WE3_LL3: return "we3-ll3";
        case FamilyId::LL3_WE3: return "ll3-we3";
    }
    return "?";
}

FamilyId parse_family(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        key += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    for (FamilyId f : kAllFamilies)
        if (key == family_slug(f)) return f;
    throw DomainError("unknown family '" + std::string(name) + "'");
}

DistParams DistParams::we3(double mu, double omega, double delta) {
    return {FamilyId::WE3, mu, omega, delta, std::nullopt, std::nullopt, std::nullopt};
}
DistParams DistParams::ll3(double mu, double omega, double delta) {
    return {FamilyId::LL3, mu, omega, delta, std::nullopt, std::nullopt, std::nullopt};
}
DistParams DistParams::ln3(double mu, double omega, double delta) {
    return {FamilyId::LN3, mu, omega, delta, std::nullopt, std::nullopt, std::nullopt};
}
DistParams DistParams::gev(double mu, double omega, double delta) {
    return {FamilyId::GEV, mu, omega, delta, std::nullopt, std::nullopt, std::nullopt};
}
DistParams DistParams::we3_ll3(double mu, double omega, double delta, double lambda, double beta, double xi) {
    return {FamilyId::WE3_LL3, mu, omega, delta, lambda, beta, xi};
}
DistParams DistParams::ll3_we3(double mu, double omega, double delta, double lambda, double beta, double xi) {
    return {FamilyId::LL3_WE3, mu, omega, delta, lambda, beta, xi};
}

DistParams DistParams::from_vector(FamilyId family, std::span<const double> v) {
    if (v.size() != param_count(family))
        throw InvalidParams(std::string(family_name(family)) + " expects " +
                            std::to_string(param_count(family)) + " parameters, got " +
                            std::to_string(v.size()));
    DistParams p{family, v[0], v[1], v[2], std::nullopt, std::nullopt, std::nullopt};
    if (is_composite(family)) {
        p.lambda = v[3];
        p.beta = v[4];
        p.xi = v[5];
    }
    return p;
}

std::vector<double> DistParams::to_vector() const {
    std::vector<double> v{mu, omega, delta};
    if (is_composite(family)) {
        v.push_back(lambda.value_or(std::nan("")));
        v.push_back(beta.value_or(std::nan("")));
        v.push_back(xi.value_or(std::nan("")));
    }
    return v;
}

void validate(const DistParams& p) {
    if (auto reason = invalid_reason(p); !reason.empty())
        throw InvalidParams(std::string(family_name(p.family)) + ": " + reason);
}

bool is_valid(const DistParams& p) noexcept {
    try {
        return invalid_reason(p).empty();
    } catch (...) {
        return false;
    }
}

bool satisfies_model_constraints(const DistParams& p) noexcept {
    if (!is_valid(p)) return false;
    switch (p.family) {
        case FamilyId::LL3: return p.omega >= 1.0;
        case FamilyId::WE3_LL3: return *p.beta >= 1.0;
        case FamilyId::LL3_WE3: return p.omega >= 1.0;
        default: return true;
    }
}

Support support(const DistParams& p) {
    validate(p);
    switch (p.family) {
        case FamilyId::WE3:
        case FamilyId::LL3:
        case FamilyId::LN3:
            return {p.delta, kInf, true};
        case FamilyId::GEV:
            if (gev_is_gumbel(p)) return {-kInf, kInf, true};
            if (p.mu > 0.0) return {p.delta - p.omega / p.mu, kInf, false};
            return {-kInf, p.delta - p.omega / p.mu, true};
        case FamilyId::WE3_LL3:
            return {*p.xi + *p.lambda * std::pow(p.delta, 1.0 / *p.beta), kInf, true};
        case FamilyId::LL3_WE3:
            return {*p.xi + *p.lambda * std::pow(std::log1p(p.delta), 1.0 / *p.beta), kInf, true};
    }
    return {};
}

double log_pdf(const DistParams& p, double x) {
    validate(p);
    return log_pdf_unchecked(p, x);
}

double pdf(const DistParams& p, double x) {
    validate(p);
    return std::exp(log_pdf_unchecked(p, x));
}

double cdf(const DistParams& p, double x) {
    validate(p);
    return cdf_unchecked(p, x);
}

double log_survival(const DistParams& p, double x) {
    validate(p);
    return log_survival_unchecked(p, x);
}

double quantile(const DistParams& p, double q) {
    validate(p);
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    return quantile_unchecked(p, q);
}

double tail_quantile(const DistParams& p, double log_prob, Tail tail) {
    validate(p);
    if (!(log_prob < 0.0)) throw DomainError("tail log-probability must be < 0");
    // log(1 - e^log_prob), split to stay accurate at both ends.
    const double log_other =
        log_prob > -std::numbers::ln2 ? std::log(-std::expm1(log_prob)) : std::log1p(-std::exp(log_prob));
    return tail == Tail::Lower ? quantile_unchecked(p, log_prob, log_other) : quantile_unchecked(p, log_other, log_prob);
}

std::vector<double> sample(const DistParams& p, std::size_t n, std::uint64_t seed) {
    validate(p);
    if (n == 0) throw DomainError("sample size must be >= 1");
    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // 53 random bits, centred in their cell so u is never 0 or 1.
        const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
        out.push_back(quantile_unchecked(p, u));
    }
    return out;
}

std::string to_string(const DistParams& p) {
    std::ostringstream os;
    os.precision(10);
    os << family_name(p.family) << "(mu=" << p.mu << ", omega=" << p.omega << ", delta=" << p.delta;
    if (is_composite(p.family))
        os << ", lambda=" << p.lambda.value_or(std::nan("")) << ", beta=" << p.beta.value_or(std::nan(""))
           << ", xi=" << p.xi.value_or(std::nan(""));
    os << ")";
    return os.str();
}

}  // namespace windfit
