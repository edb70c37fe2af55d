#pragma once

#include <cstddef>
#include <functional>

namespace windfit::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;     // estimated absolute error
    std::size_t intervals = 0;
    bool converged = false;
};

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 2000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Either bound may be infinite; semi-infinite and infinite ranges are mapped
/// onto finite ones by x = a + t / (1 - t). The integrand is never evaluated
/// at an endpoint.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

}  // namespace windfit::quad
