#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "windfit/error.hpp"
#include "windfit/stats.hpp"

using namespace windfit;
using windfit::stats::describe;

TEST(Stats, ThreePoints) {
    const auto d = describe(std::vector<double>{3.0, 1.0, 2.0});
    EXPECT_EQ(d.n, 3u);
    EXPECT_DOUBLE_EQ(d.mean, 2.0);
    EXPECT_DOUBLE_EQ(d.sd, 1.0);
    EXPECT_DOUBLE_EQ(d.se_mean, 1.0 / std::sqrt(3.0));
    EXPECT_NEAR(d.skewness, 0.0, 1e-15);
    // m4 / m2^2 = (2/3) / (4/9)
    EXPECT_NEAR(d.kurtosis, 1.5, 1e-14);
    EXPECT_EQ(d.max, 3.0);
    EXPECT_DOUBLE_EQ(d.q1, 1.5);
    EXPECT_DOUBLE_EQ(d.q2, 2.0);
    EXPECT_DOUBLE_EQ(d.q3, 2.5);
}

TEST(Stats, SkewedSample) {
    // {0, 0, 0, 4}: mean 1, m2 = 3, m3 = 6, m4 = 84/4.
    const auto d = describe(std::vector<double>{0.0, 0.0, 0.0, 4.0});
    EXPECT_DOUBLE_EQ(d.sd, 2.0);
    EXPECT_NEAR(d.skewness, 6.0 / std::pow(3.0, 1.5), 1e-14);
    EXPECT_NEAR(d.kurtosis, 21.0 / 9.0, 1e-14);
    EXPECT_DOUBLE_EQ(d.q3, 1.0);
}

TEST(Stats, LinearQuantile) {
    const std::vector<double> s = {10.0, 20.0, 30.0, 40.0, 50.0};
    EXPECT_DOUBLE_EQ(stats::quantile_linear(s, 0.0), 10.0);
    EXPECT_DOUBLE_EQ(stats::quantile_linear(s, 1.0), 50.0);
    EXPECT_DOUBLE_EQ(stats::quantile_linear(s, 0.1), 14.0);
    EXPECT_DOUBLE_EQ(stats::quantile_linear(s, 0.5), 30.0);
}

TEST(Stats, NormalKurtosis) {
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> z;
    std::vector<double> x(100'000);
    for (double& v : x) v = z(gen);
    const auto d = describe(x);
    EXPECT_NEAR(d.kurtosis, 3.0, 0.1);
    EXPECT_NEAR(d.skewness, 0.0, 0.05);
    EXPECT_NEAR(d.sd, 1.0, 0.01);
}

TEST(Stats, ShiftAndScale) {
    std::mt19937_64 gen(7);
    std::gamma_distribution<double> g(2.0, 1.5);
    std::vector<double> x(500);
    for (double& v : x) v = g(gen);
    const auto d = describe(x);

    std::vector<double> shifted, scaled;
    for (double v : x) {
        shifted.push_back(v + 3.25);
        scaled.push_back(2.5 * v);
    }
    const auto a = describe(shifted);
    EXPECT_NEAR(a.mean, d.mean + 3.25, 1e-12);
    EXPECT_NEAR(a.max, d.max + 3.25, 1e-12);
    EXPECT_NEAR(a.q1, d.q1 + 3.25, 1e-12);
    EXPECT_NEAR(a.q2, d.q2 + 3.25, 1e-12);
    EXPECT_NEAR(a.q3, d.q3 + 3.25, 1e-12);
    EXPECT_NEAR(a.sd, d.sd, 1e-12);
    EXPECT_NEAR(a.skewness, d.skewness, 1e-12);
    EXPECT_NEAR(a.kurtosis, d.kurtosis, 1e-12);

    const auto b = describe(scaled);
    EXPECT_NEAR(b.mean, 2.5 * d.mean, 1e-12);
    EXPECT_NEAR(b.sd, 2.5 * d.sd, 1e-12);
    EXPECT_NEAR(b.max, 2.5 * d.max, 1e-12);
    EXPECT_NEAR(b.q2, 2.5 * d.q2, 1e-12);
    EXPECT_NEAR(b.skewness, d.skewness, 1e-12);
    EXPECT_NEAR(b.kurtosis, d.kurtosis, 1e-12);
}

TEST(Stats, Ordering) {
    std::mt19937_64 gen(3);
    std::exponential_distribution<double> e(0.4);
    std::vector<double> x(301);
    for (double& v : x) v = e(gen);
    const auto d = describe(x);
    EXPECT_LE(d.q1, d.q2);
    EXPECT_LE(d.q2, d.q3);
    EXPECT_LE(d.q3, d.max);
    EXPECT_DOUBLE_EQ(d.se_mean, d.sd / std::sqrt(301.0));
}

TEST(Stats, Errors) {
    EXPECT_THROW(describe(std::vector<double>{}), InsufficientData);
    EXPECT_THROW(describe(std::vector<double>{1.0}), InsufficientData);
}
