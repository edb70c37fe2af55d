#include "windfit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace windfit::quad {

namespace {

// Kronrod abscissae; odd indices are the 7 Gauss points.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_k = std::abs(kronrod);
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const double sum = fv1[j] + fv2[j];
        kronrod += kWgk[j] * sum;
        abs_k += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    // Integral of |f - mean| for the QUADPACK error scaling.
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double result = kronrod * h;
    abs_k *= std::abs(h);
    asc *= std::abs(h);
    double err = std::abs((kronrod - gauss) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_k > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * abs_k);
    if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
    return {a, b, result, err};
}

Result adaptive(const std::function<double(double)>& f, double a, double b, const Options& opt) {
    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    std::size_t count = 1;
    auto done = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!done() && count < opt.max_intervals) {
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
        heap.pop();
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    double value = 0.0;
    double error = 0.0;
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    for (const auto& s : segs) {
        value += s.value;
        error += s.error;
    }
    Result r;
    r.value = value;
    r.error = error;
    r.intervals = count;
    r.converged = std::isfinite(value) && error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    return r;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opt) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) {
        Result r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (lo_inf && hi_inf) {
        Result left = integrate(f, a, 0.0, opt);
        Result right = integrate(f, 0.0, b, opt);
        return {left.value + right.value, left.error + right.error, left.intervals + right.intervals,
                left.converged && right.converged};
    }
    if (hi_inf) {
        auto g = [&](double t) {
            const double u = 1.0 - t;
            return f(a + t / u) / (u * u);
        };
        return adaptive(g, 0.0, 1.0, opt);
    }
    if (lo_inf) {
        auto g = [&](double t) {
            const double u = 1.0 - t;
            return f(b - t / u) / (u * u);
        };
        return adaptive(g, 0.0, 1.0, opt);
    }
    return adaptive(f, a, b, opt);
}

}  // namespace windfit::quad
