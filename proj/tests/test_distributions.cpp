#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "reference_fits.hpp"
#include "windfit/distributions.hpp"
#include "windfit/error.hpp"
#include "windfit/quadrature.hpp"
#include "windfit/txcompose.hpp"

using namespace windfit;

namespace {

const double kE1 = std::exp(-1.0);

// A spread of valid parameter sets per family, including the reference fits.
std::vector<DistParams> parameter_sets() {
    std::vector<DistParams> out = {
        DistParams::we3(1, 1, 0),       DistParams::we3(2, 1.5, 0),        DistParams::we3(4.2, 2.3, -0.4),
        DistParams::we3(0.8, 0.7, 1.0), DistParams::ll3(1, 2, 0),          DistParams::ll3(2.5, 3.5, 0.3),
        DistParams::ll3(0.4, 1.2, -1),  DistParams::ln3(0, 1, 0),          DistParams::ln3(0.4, 0.6, -0.5),
        DistParams::ln3(1.6, 0.2, 2),   DistParams::gev(0, 1, 0),          DistParams::gev(0.2, 1.5, 2),
        DistParams::gev(-0.3, 2, 3),    DistParams::gev(0.0484, 1.7539, 2.5308),
    };
    for (const auto& row : fixtures::kCompositeRows) out.push_back(row.params());
    return out;
}

// Finite interval covering all but ~1e-12 of the mass, clipped to the support.
std::pair<double, double> grid_range(const DistParams& p) {
    const Support s = support(p);
    double lo = quantile(p, 1e-6);
    double hi = quantile(p, 1 - 1e-6);
    if (std::isfinite(s.lower)) lo = std::max(lo, s.lower);
    if (std::isfinite(s.upper)) hi = std::min(hi, s.upper);
    return {lo, hi};
}

}  // namespace

TEST(Distributions, PointValues) {
    EXPECT_DOUBLE_EQ(pdf(DistParams::we3(1, 1, 0), 0.0), 1.0);
    EXPECT_DOUBLE_EQ(pdf(DistParams::ll3(1, 2, 0), 1.0), 0.5);
    EXPECT_NEAR(pdf(DistParams::gev(0.5, 2, 1), 1.0), kE1 / 2, 1e-15);
    EXPECT_NEAR(pdf(DistParams::we3_ll3(1, 1, 0, 1, 1, 0), 1.0), kE1, 1e-15);

    EXPECT_NEAR(cdf(DistParams::we3(1, 1, 0), 1.0), 1 - kE1, 1e-15);
    EXPECT_DOUBLE_EQ(cdf(DistParams::ll3(1, 2, 0), 1.0), 0.5);
    EXPECT_DOUBLE_EQ(cdf(DistParams::ln3(0, 1, 2), 3.0), 0.5);
    EXPECT_NEAR(cdf(DistParams::ll3_we3(1, 1, 0, 1, 1, 0), std::log(2.0)), 0.5, 1e-15);
    EXPECT_NEAR(cdf(DistParams::gev(0.0484, 1.7539, 2.5308), 2.5308), kE1, 1e-15);

    EXPECT_NEAR(quantile(DistParams::we3(1, 1, 0), 1 - kE1), 1.0, 1e-15);
    EXPECT_NEAR(quantile(DistParams::ll3_we3(1, 1, 0, 1, 1, 0), 0.5), std::numbers::ln2, 1e-15);
}

TEST(Distributions, AgreesWithReferenceImplementations) {
    // scipy.stats weibull_min / fisk / lognorm / genextreme / gumbel_r
    // (scipy's GEV shape c is the negated mu).
    EXPECT_NEAR(pdf(DistParams::we3(2.2, 1.7, 0.5), 3.0), 0.2438789207465009, 1e-14);
    EXPECT_NEAR(cdf(DistParams::we3(2.2, 1.7, 0.5), 3.0), 0.7114069324960208, 1e-14);
    EXPECT_NEAR(pdf(DistParams::ll3(2.2, 2.5, 0.5), 3.0), 0.24372375949569, 1e-14);
    EXPECT_NEAR(cdf(DistParams::ll3(2.2, 2.5, 0.5), 3.0), 0.5792227271956099, 1e-14);
    EXPECT_NEAR(pdf(DistParams::ln3(0.3, 0.5, 1.0), 2.5), 0.5202206456693564, 1e-14);
    EXPECT_NEAR(cdf(DistParams::ln3(0.3, 0.5, 1.0), 2.5), 0.5835291372991109, 1e-14);
    EXPECT_NEAR(pdf(DistParams::gev(0.2, 2, 1), 3.0), 0.11203386432543154, 1e-14);
    EXPECT_NEAR(cdf(DistParams::gev(0.2, 2, 1), 3.0), 0.6690626526678187, 1e-14);
    EXPECT_NEAR(pdf(DistParams::gev(-0.3, 2, 1), 3.0), 0.16042322672492856, 1e-14);
    EXPECT_NEAR(cdf(DistParams::gev(-0.3, 2, 1), 3.0), 0.7374543635627547, 1e-14);
    EXPECT_NEAR(pdf(DistParams::gev(0, 2, 1), 3.0), 0.12732319002179124, 1e-14);
    EXPECT_NEAR(cdf(DistParams::gev(0, 2, 1), 3.0), 0.6922006275553464, 1e-14);
}

TEST(Distributions, CompositesAgreeWithHighPrecisionFormula) {
    // The composite densities written out directly and evaluated with
    // 40-digit arithmetic (mpmath).
    const DistParams a = fixtures::kCompositeRows[0].params();  // annual WE3-LL3
    const DistParams b = fixtures::kCompositeRows[1].params();  // annual LL3-WE3
    struct Point {
        double x, fa, Fa, fb, Fb;
    };
    const Point pts[] = {
        {1.0, 0.14896443711264957449, 0.10810298211471672922, 0.14007650457231159015, 0.099296341840536506077},
        {3.0, 0.17603886360843353099, 0.4623044823567165986, 0.18957633834589322744, 0.46420986899123330982},
        {6.0, 0.076156779170701930387, 0.84433158291641101995, 0.070692720331622188652, 0.8554846701104448416},
        {12.0, 0.0029008745824335372991, 0.99590880013619399727, 0.0034457659204937115915, 0.99367227249077645395},
    };
    for (const auto& pt : pts) {
        EXPECT_NEAR(pdf(a, pt.x), pt.fa, 1e-13) << pt.x;
        EXPECT_NEAR(cdf(a, pt.x), pt.Fa, 1e-13) << pt.x;
        EXPECT_NEAR(pdf(b, pt.x), pt.fb, 1e-13) << pt.x;
        EXPECT_NEAR(cdf(b, pt.x), pt.Fb, 1e-13) << pt.x;
    }
}

TEST(Distributions, LL3WE3DensityMatchesCompositionAndDerivative) {
    const DistParams p = fixtures::kCompositeRows[1].params();
    const tx::TxSpec spec = tx::spec_for(p);
    EXPECT_NEAR(pdf(p, 3.0), tx::tx_pdf(spec, 3.0), 1e-10);
    // Five-point central difference of the composed cdf.
    const double h = 1e-3;
    auto F = [&](double x) { return tx::tx_cdf(spec, x); };
    const double d = (-F(3 + 2 * h) + 8 * F(3 + h) - 8 * F(3 - h) + F(3 - 2 * h)) / (12 * h);
    EXPECT_NEAR(pdf(p, 3.0), d, 1e-9);
}

TEST(Distributions, Support) {
    const Support we3 = support(DistParams::we3(1, 2, 3));
    EXPECT_EQ(we3.lower, 3.0);
    EXPECT_TRUE(we3.lower_open);
    EXPECT_TRUE(std::isinf(we3.upper));

    const Support gev_neg = support(DistParams::gev(-0.5, 1, 0));
    EXPECT_TRUE(std::isinf(gev_neg.lower) && gev_neg.lower < 0);
    EXPECT_DOUBLE_EQ(gev_neg.upper, 2.0);
    EXPECT_TRUE(gev_neg.contains(2.0));

    const Support gev_pos = support(DistParams::gev(0.5, 1, 0));
    EXPECT_DOUBLE_EQ(gev_pos.lower, -2.0);

    EXPECT_DOUBLE_EQ(support(DistParams::we3_ll3(1, 1, 0.5, 1, 1, 0)).lower, 0.5);
    // xi + lambda * delta^(1/beta)
    EXPECT_NEAR(support(DistParams::we3_ll3(1, 1, 0.5, 2, 2, 1)).lower, 1 + 2 * std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(support(DistParams::ll3_we3(1, 1, 0.5, 2, 2, 1)).lower, 1 + 2 * std::sqrt(std::log1p(0.5)), 1e-15);
}

TEST(Distributions, OutsideSupportIsZero) {
    for (const auto& p : parameter_sets()) {
        const Support s = support(p);
        if (std::isfinite(s.lower)) {
            EXPECT_EQ(pdf(p, s.lower - 1.0), 0.0) << to_string(p);
            EXPECT_EQ(cdf(p, s.lower - 1.0), 0.0) << to_string(p);
        }
        if (std::isfinite(s.upper)) {
            EXPECT_EQ(pdf(p, s.upper + 1.0), 0.0) << to_string(p);
            EXPECT_EQ(cdf(p, s.upper + 1.0), 1.0) << to_string(p);
        }
    }
}

TEST(Distributions, InvalidParametersThrow) {
    EXPECT_THROW(pdf(DistParams::we3(-1, 1, 0), 1.0), InvalidParams);
    EXPECT_THROW(pdf(DistParams::we3(1, 0, 0), 1.0), InvalidParams);
    EXPECT_THROW(cdf(DistParams::ln3(0, -1, 0), 1.0), InvalidParams);
    EXPECT_THROW(cdf(DistParams::gev(0, 0, 0), 1.0), InvalidParams);
    EXPECT_THROW(pdf(DistParams::we3(1, std::nan(""), 0), 1.0), InvalidParams);
    EXPECT_THROW(pdf(DistParams::we3_ll3(1, 1, 0, -1, 1, 0), 1.0), InvalidParams);
    EXPECT_THROW(pdf(DistParams::ll3_we3(1, 1, -0.5, 1, 1, 0), 1.0), InvalidParams);

    DistParams missing_tx = DistParams::we3(1, 1, 0);
    missing_tx.family = FamilyId::WE3_LL3;
    EXPECT_THROW(validate(missing_tx), InvalidParams);
    DistParams stray_tx = DistParams::we3(1, 1, 0);
    stray_tx.lambda = 1.0;
    EXPECT_THROW(validate(stray_tx), InvalidParams);
}

TEST(Distributions, ModelConstraints) {
    EXPECT_TRUE(satisfies_model_constraints(DistParams::ll3(1, 1, 0)));
    EXPECT_FALSE(satisfies_model_constraints(DistParams::ll3(1, 0.9, 0)));
    EXPECT_FALSE(satisfies_model_constraints(fixtures::kCompositeRows[0].params()));  // beta = 0.7489
    EXPECT_TRUE(satisfies_model_constraints(fixtures::kCompositeRows[4].params()));
    EXPECT_FALSE(satisfies_model_constraints(DistParams::ll3_we3(1, 0.5, 0, 1, 1, 0)));
}

TEST(Distributions, QuantileDomain) {
    const DistParams p = DistParams::we3(1, 1, 0);
    EXPECT_THROW(quantile(p, 0.0), DomainError);
    EXPECT_THROW(quantile(p, 1.0), DomainError);
    EXPECT_THROW(quantile(p, -0.1), DomainError);
    EXPECT_THROW(quantile(p, std::nan("")), DomainError);
}

TEST(Distributions, QuantileRoundTrip) {
    for (const auto& p : parameter_sets()) {
        double prev = -std::numeric_limits<double>::infinity();
        for (double q : {0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999}) {
            const double x = quantile(p, q);
            EXPECT_NEAR(cdf(p, x), q, 1e-9 * q) << to_string(p) << " q=" << q;
            EXPECT_GT(x, prev);
            prev = x;
        }
    }
}

TEST(Distributions, TailQuantileReachesDeepTails) {
    const DistParams p = DistParams::ll3(1, 4, 0);
    // Upper tail r = 1e-30: closed form mu * ((1 - r) / r)^(1/omega).
    EXPECT_NEAR(tail_quantile(p, std::log(1e-30), Tail::Upper), std::pow(1e30, 0.25), 1e-6);
    EXPECT_NEAR(tail_quantile(p, std::log(1e-30), Tail::Lower), std::pow(1e-30, 0.25), 1e-20);
    const DistParams w = DistParams::we3(2, 1.5, 0);
    EXPECT_NEAR(tail_quantile(w, std::log(0.3), Tail::Lower), quantile(w, 0.3), 1e-14);
    EXPECT_NEAR(tail_quantile(w, std::log(0.3), Tail::Upper), quantile(w, 0.7), 1e-14);
    EXPECT_THROW(tail_quantile(w, 0.0, Tail::Upper), DomainError);
}

TEST(Distributions, Normalization) {
    for (const auto& p : parameter_sets()) {
        const Support s = support(p);
        const auto r = quad::integrate([&](double x) { return pdf(p, x); }, s.lower, s.upper, {0.0, 1e-9, 4000});
        EXPECT_NEAR(r.value, 1.0, 1e-6) << to_string(p);
    }
}

TEST(Distributions, DensityIsDerivativeOfCdf) {
    for (const auto& p : parameter_sets()) {
        const auto [lo, hi] = grid_range(p);
        for (int i = 1; i <= 50; ++i) {
            const double x = lo + (hi - lo) * i / 51.0;
            const double h = 1e-5 * std::max(1.0, std::abs(x));
            const double d = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h);
            EXPECT_NEAR(d, pdf(p, x), 1e-5) << to_string(p) << " x=" << x;
        }
    }
}

TEST(Distributions, LogFunctionsConsistent) {
    for (const auto& p : parameter_sets()) {
        const auto [lo, hi] = grid_range(p);
        for (int i = 1; i < 20; ++i) {
            const double x = lo + (hi - lo) * i / 20.0;
            EXPECT_NEAR(std::exp(log_pdf(p, x)), pdf(p, x), 1e-12 * std::max(1.0, pdf(p, x)));
            EXPECT_NEAR(-std::expm1(log_survival(p, x)), cdf(p, x), 1e-12);
        }
    }
}

TEST(Distributions, CdfMonotone) {
    for (const auto& p : parameter_sets()) {
        const auto [lo, hi] = grid_range(p);
        double prev = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double F = cdf(p, lo + (hi - lo) * i / 1000.0);
            EXPECT_GE(F, prev) << to_string(p);
            EXPECT_LE(F, 1.0);
            prev = F;
        }
    }
}

TEST(Distributions, CompositeReductions) {
    // Unit transformer: WE3-LL3 collapses to the generator itself.
    for (double x : {0.1, 0.7, 1.5, 3.0, 8.0}) {
        EXPECT_NEAR(cdf(DistParams::we3_ll3(1.7, 2.1, 0.3, 1, 1, 0), x), cdf(DistParams::we3(1.7, 2.1, 0.3), x), 1e-15);
    }
    // Neutral generator: both composites collapse to the transformer WE3.
    const DistParams w = DistParams::we3(2.3, 1.8, 0.4);
    for (double x : {0.5, 1.0, 2.0, 4.0, 7.0}) {
        EXPECT_NEAR(cdf(DistParams::we3_ll3(1, 1, 0, 2.3, 1.8, 0.4), x), cdf(w, x), 1e-14);
        EXPECT_NEAR(cdf(DistParams::ll3_we3(1, 1, 0, 2.3, 1.8, 0.4), x), cdf(w, x), 1e-14);
        EXPECT_NEAR(pdf(DistParams::ll3_we3(1, 1, 0, 2.3, 1.8, 0.4), x), pdf(w, x), 1e-14);
    }
}

TEST(Distributions, FarTailStaysFinite) {
    const DistParams p = fixtures::kCompositeRows[1].params();
    EXPECT_EQ(cdf(p, 1e6), 1.0);
    EXPECT_TRUE(std::isfinite(log_pdf(p, 1e3)));
    EXPECT_LT(log_survival(p, 200.0), -50.0);
}

TEST(Distributions, SampleDeterministicAndInSupport) {
    const DistParams p = DistParams::we3(2, 1.5, 0);
    const auto a = sample(p, 5, 42);
    const auto b = sample(p, 5, 42);
    ASSERT_EQ(a.size(), 5u);
    EXPECT_EQ(a, b);
    for (double x : a) EXPECT_GT(x, 0.0);
    EXPECT_NE(a, sample(p, 5, 43));
    for (const auto& q : parameter_sets()) {
        const Support s = support(q);
        for (double x : sample(q, 200, 3)) EXPECT_TRUE(s.contains(x)) << to_string(q) << " " << x;
    }
}

TEST(Distributions, ExponentialSampleMean) {
    const auto x = sample(DistParams::we3(1, 1, 0), 100000, 7);
    double sum = 0.0;
    for (double v : x) sum += v;
    EXPECT_NEAR(sum / x.size(), 1.0, 0.03);
}

TEST(Distributions, SampleMatchesCdf) {
    const DistParams p = DistParams::ll3_we3(1, 2, 0, 1, 1, 0);
    auto x = sample(p, 10000, 1);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = cdf(p, x[i]);
        d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
    }
    EXPECT_LT(d, 0.02);
}

TEST(Distributions, Names) {
    for (FamilyId f : kAllFamilies) {
        EXPECT_EQ(parse_family(family_name(f)), f);
        EXPECT_EQ(parse_family(family_slug(f)), f);
    }
    EXPECT_EQ(parse_family("we3_ll3"), FamilyId::WE3_LL3);
    EXPECT_EQ(family_name(FamilyId::LL3_WE3), "LL3-WE3");
    EXPECT_THROW(parse_family("weibull"), DomainError);
    EXPECT_EQ(param_count(FamilyId::GEV), 3u);
    EXPECT_EQ(param_count(FamilyId::LL3_WE3), 6u);
}

TEST(Distributions, VectorRoundTrip) {
    for (const auto& p : parameter_sets()) {
        EXPECT_EQ(DistParams::from_vector(p.family, p.to_vector()), p);
    }
    const std::vector<double> short_vec = {1, 2};
    EXPECT_THROW(DistParams::from_vector(FamilyId::WE3, short_vec), InvalidParams);
}
