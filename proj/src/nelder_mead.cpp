#include "windfit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "windfit/error.hpp"

namespace windfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;

// x = a + t * (b - a)
Point lerp(const Point& a, const Point& b, double t) {
    Point x(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) x[j] = a[j] + t * (b[j] - a[j]);
    return x;
}

}  // namespace

void SimplexConfig::validate() const {
    if (!(reflection > 0.0)) throw DomainError("reflection coefficient must be > 0");
    if (!(expansion > reflection)) throw DomainError("expansion coefficient must exceed reflection");
    if (!(contraction > 0.0 && contraction < 1.0)) throw DomainError("contraction coefficient must lie in (0, 1)");
    if (!(shrink > 0.0 && shrink < 1.0)) throw DomainError("shrink coefficient must lie in (0, 1)");
}

SimplexResult nelder_mead(const Objective& cost, std::span<const double> start, const SimplexConfig& cfg) {
    cfg.validate();
    const std::size_t dim = start.size();
    if (dim == 0) throw DomainError("nelder_mead needs at least one parameter");

    SimplexResult out;
    auto eval = [&](const Point& x) {
        ++out.evaluations;
        const double f = cost(x);
        return std::isnan(f) ? kInf : f;
    };

    std::vector<Point> vertex(dim + 1, Point(start.begin(), start.end()));
    std::vector<double> fv(dim + 1);
    fv[0] = eval(vertex[0]);
    if (!std::isfinite(fv[0])) throw InfeasibleStart("objective is not finite at the starting point");
    for (std::size_t j = 0; j < dim; ++j) {
        Point& v = vertex[j + 1];
        const double step = std::max(0.05 * std::abs(v[j]), 0.05);
        v[j] += step;
        fv[j + 1] = eval(v);
        if (!std::isfinite(fv[j + 1])) {
            v[j] -= 2.0 * step;
            fv[j + 1] = eval(v);
        }
    }

    std::vector<std::size_t> order(dim + 1);
    for (;;) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Stable so equal costs keep vertex order; keeps runs reproducible.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        if (cfg.record_history && out.iterations > 0) out.best_history.push_back(fv[best]);

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                diameter = std::max(diameter, std::abs(vertex[i][j] - vertex[best][j]));
        const double spread = fv[worst] - fv[best];
        // Both must hold: cost spread alone stops early when vertices straddle
        // the minimum at equal height.
        if (spread < cfg.tol_f && diameter < cfg.tol_x) {
            out.converged = true;
            break;
        }
        if (out.iterations >= cfg.max_iter) break;
        ++out.iterations;

        Point centroid(dim, 0.0);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += vertex[order[k]][j];
        for (double& c : centroid) c /= static_cast<double>(dim);

        const Point& xw = vertex[worst];
        Point xr = lerp(centroid, xw, -cfg.reflection);
        const double fr = eval(xr);

        if (fr < fv[best]) {
            Point xe = lerp(centroid, xw, -cfg.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                vertex[worst] = std::move(xe);
                fv[worst] = fe;
            } else {
                vertex[worst] = std::move(xr);
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second_worst]) {
            vertex[worst] = std::move(xr);
            fv[worst] = fr;
            continue;
        }
        if (fr < fv[worst]) {
            Point xc = lerp(centroid, xr, cfg.contraction);
            const double fc = eval(xc);
            if (fc <= fr) {
                vertex[worst] = std::move(xc);
                fv[worst] = fc;
                continue;
            }
        } else {
            Point xcc = lerp(centroid, xw, cfg.contraction);
            const double fcc = eval(xcc);
            if (fcc < fv[worst]) {
                vertex[worst] = std::move(xcc);
                fv[worst] = fcc;
                continue;
            }
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            vertex[i] = lerp(vertex[best], vertex[i], cfg.shrink);
            fv[i] = eval(vertex[i]);
        }
    }

    const auto best_it = std::min_element(fv.begin(), fv.end());
    const auto best = static_cast<std::size_t>(best_it - fv.begin());
    out.point = vertex[best];
    out.cost = fv[best];
    return out;
}

}  // namespace windfit
