#include "windfit/txcompose.hpp"

#include <algorithm>
#include <cmath>

#include "windfit/error.hpp"

namespace windfit::tx {

namespace {

struct Odds {
    double g;              // H / (1 - H)
    double one_minus_h;    // 1 - H
};

Odds odds(const TxSpec& spec, double x) {
    if (spec.transformer_log_survival) {
        const double log_s = (*spec.transformer_log_survival)(x);
        if (std::isinf(log_s) && log_s < 0.0) throw EvaluationError("transformer saturated: H(x) == 1");
        // G = (1 - S) / S = exp(-log S) - 1
        return {std::expm1(-log_s), std::exp(log_s)};
    }
    const double h = spec.transformer_cdf(x);
    if (h >= 1.0) throw EvaluationError("transformer saturated: H(x) == 1");
    return {h / (1.0 - h), 1.0 - h};
}

}  // namespace

double tx_cdf(const TxSpec& spec, double x) {
    const Odds o = odds(spec, x);
    const double f = spec.generator_cdf(o.g) - spec.generator_cdf(spec.generator_lower);
    // Only rounding noise is absorbed here.
    return std::clamp(f, 0.0, 1.0);
}

double tx_pdf(const TxSpec& spec, double x) {
    const Odds o = odds(spec, x);
    const double k = spec.generator_pdf(o.g);
    if (k == 0.0) return 0.0;
    const double h = spec.transformer_pdf(x);
    return h / (o.one_minus_h * o.one_minus_h) * k;
}

TxSpec spec_for(const DistParams& p) {
    validate(p);
    DistParams transformer;
    DistParams generator;
    switch (p.family) {
        case FamilyId::WE3_LL3:
            transformer = DistParams::ll3(*p.lambda, *p.beta, *p.xi);
            generator = DistParams::we3(p.mu, p.omega, p.delta);
            break;
        case FamilyId::LL3_WE3:
            transformer = DistParams::we3(*p.lambda, *p.beta, *p.xi);
            generator = DistParams::ll3(p.mu, p.omega, p.delta);
            break;
        default:
            throw InvalidParams(std::string(family_name(p.family)) + " is not a T-X composite");
    }
    TxSpec spec;
    spec.transformer_cdf = [transformer](double x) { return cdf(transformer, x); };
    spec.transformer_pdf = [transformer](double x) { return pdf(transformer, x); };
    spec.transformer_log_survival = [transformer](double x) { return log_survival(transformer, x); };
    spec.generator_cdf = [generator](double t) { return cdf(generator, t); };
    spec.generator_pdf = [generator](double t) { return pdf(generator, t); };
    spec.generator_lower = generator.delta;
    return spec;
}

}  // namespace windfit::tx
