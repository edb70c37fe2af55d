#pragma once

#include <functional>
#include <optional>

#include "windfit/distributions.hpp"

namespace windfit::tx {

using ScalarFn = std::function<double(double)>;

/// A transformer X (cdf H, pdf h) and a generator T (cdf K, pdf k) composed
/// through the odds map G(H) = H / (1 - H):
///
///   F(x) = K(G(H(x))) - K(m),   f(x) = h(x) / (1 - H(x))^2 * k(G(H(x)))
///
/// where m is the lower end of the generator's support. All handles must be
/// pure; the composition is then safe to evaluate concurrently.
struct TxSpec {
    ScalarFn transformer_cdf;
    ScalarFn transformer_pdf;
    ScalarFn generator_cdf;
    ScalarFn generator_pdf;
    double generator_lower = 0.0;
    /// Optional log(1 - H(x)). When present it replaces 1 - H in the odds map,
    /// which keeps G accurate where H rounds to 1.
    std::optional<ScalarFn> transformer_log_survival;
};

/// Throws EvaluationError when the transformer is saturated (H(x) == 1).
double tx_cdf(const TxSpec& spec, double x);
double tx_pdf(const TxSpec& spec, double x);

/// Builds the composition for a WE3_LL3 or LL3_WE3 parameter set out of the
/// single-family LL3 and WE3 functions. Throws InvalidParams for any other
/// family.
TxSpec spec_for(const DistParams& composite);

}  // namespace windfit::tx
