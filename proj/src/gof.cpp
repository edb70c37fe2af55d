#include "windfit/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "windfit/error.hpp"

namespace windfit::gof {

namespace {

void check_lengths(const ProbabilityPairs& pairs) {
    if (pairs.empirical.size() != pairs.predicted.size())
        throw LengthMismatch("empirical and predicted probabilities differ in length");
    if (pairs.empirical.empty()) throw LengthMismatch("no probability pairs");
}

double sum_sq_diff(const ProbabilityPairs& pairs) {
    double ss = 0.0;
    for (std::size_t j = 0; j < pairs.n(); ++j) {
        const double d = pairs.empirical[j] - pairs.predicted[j];
        ss += d * d;
    }
    return ss;
}

// 1-based ranks; ties keep input order.
std::vector<std::size_t> ranks_by(const std::vector<double>& values, bool ascending) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ascending ? values[a] < values[b] : values[a] > values[b];
    });
    std::vector<std::size_t> rank(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
    return rank;
}

}  // namespace

void GofConfig::validate() const {
    if (!(plotting_a >= 0.0 && plotting_a <= 1.0)) throw DomainError("plotting position constant must lie in [0, 1]");
}

std::vector<double> empirical_cdf(std::size_t n, const GofConfig& cfg) {
    cfg.validate();
    std::vector<double> f(n);
    const double denom = static_cast<double>(n) - 2.0 * cfg.plotting_a + 1.0;
    for (std::size_t j = 0; j < n; ++j) f[j] = (static_cast<double>(j + 1) - cfg.plotting_a) / denom;
    return f;
}

ProbabilityPairs make_pairs(std::span<const double> sample, const DistParams& p, const GofConfig& cfg) {
    if (sample.empty()) throw EmptySample("goodness of fit needs a nonempty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    ProbabilityPairs pairs;
    pairs.empirical = empirical_cdf(sorted.size(), cfg);
    pairs.predicted.reserve(sorted.size());
    for (double x : sorted) pairs.predicted.push_back(cdf(p, x));
    return pairs;
}

double rmse(const ProbabilityPairs& pairs) {
    check_lengths(pairs);
    return std::sqrt(sum_sq_diff(pairs) / static_cast<double>(pairs.n()));
}

double r_squared(const ProbabilityPairs& pairs, bool standard) {
    check_lengths(pairs);
    const auto& centre_on = standard ? pairs.empirical : pairs.predicted;
    const double mean = std::accumulate(centre_on.begin(), centre_on.end(), 0.0) / static_cast<double>(pairs.n());
    double denom = 0.0;
    for (double f : pairs.empirical) denom += (f - mean) * (f - mean);
    if (denom == 0.0) throw ZeroVariance("R^2 denominator is zero");
    return 1.0 - sum_sq_diff(pairs) / denom;
}

double ks_stat(const ProbabilityPairs& pairs) {
    check_lengths(pairs);
    double d = 0.0;
    for (std::size_t j = 0; j < pairs.n(); ++j) d = std::max(d, std::abs(pairs.empirical[j] - pairs.predicted[j]));
    return d;
}

double chi2_stat(const ProbabilityPairs& pairs) {
    check_lengths(pairs);
    double chi2 = 0.0;
    for (std::size_t j = 0; j < pairs.n(); ++j) {
        const double fhat = pairs.predicted[j];
        if (fhat == 0.0) throw ZeroPredicted("predicted probability is zero at order statistic " + std::to_string(j + 1));
        const double d = pairs.empirical[j] - fhat;
        chi2 += d * d / fhat;
    }
    return chi2;
}

GofReport evaluate(const ProbabilityPairs& pairs, const GofConfig& cfg) {
    GofReport r;
    r.ks = ks_stat(pairs);
    r.r2 = r_squared(pairs, cfg.r2_standard);
    r.rmse = rmse(pairs);
    r.chi2 = chi2_stat(pairs);
    return r;
}

GofReport evaluate(std::span<const double> sample, const DistParams& p, const GofConfig& cfg) {
    return evaluate(make_pairs(sample, p, cfg), cfg);
}

std::vector<std::pair<FamilyId, GofReport>> rank_models(std::vector<std::pair<FamilyId, GofReport>> reports,
                                                        RankRule rule) {
    const std::size_t k = reports.size();
    if (k == 0) return reports;
    std::vector<double> ks(k), r2(k), rm(k), c2(k);
    for (std::size_t i = 0; i < k; ++i) {
        ks[i] = reports[i].second.ks;
        r2[i] = reports[i].second.r2;
        rm[i] = reports[i].second.rmse;
        c2[i] = reports[i].second.chi2;
    }
    const auto rk = ranks_by(ks, true);
    const auto rr = ranks_by(r2, false);
    const auto rm_rank = ranks_by(rm, true);
    const auto rc = ranks_by(c2, true);
    std::vector<std::size_t> rank_sum(k);
    for (std::size_t i = 0; i < k; ++i) rank_sum[i] = rk[i] + rr[i] + rm_rank[i] + rc[i];

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto fa = static_cast<int>(reports[a].first);
        const auto fb = static_cast<int>(reports[b].first);
        if (rule == RankRule::KsFirst) {
            if (ks[a] != ks[b]) return ks[a] < ks[b];
            if (rank_sum[a] != rank_sum[b]) return rank_sum[a] < rank_sum[b];
        } else {
            if (rank_sum[a] != rank_sum[b]) return rank_sum[a] < rank_sum[b];
            if (ks[a] != ks[b]) return ks[a] < ks[b];
        }
        if (fa != fb) return fa < fb;
        return a < b;
    });
    for (std::size_t r = 0; r < k; ++r) reports[order[r]].second.rank = r + 1;
    return reports;
}

}  // namespace windfit::gof
