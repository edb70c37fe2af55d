#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace windfit {

// The six wind-speed models. Enumeration order is the reporting order and the
// final tie-break used by model ranking.
enum class FamilyId { WE3, LL3, LN3, GEV, WE3_LL3, LL3_WE3 };

inline constexpr std::array<FamilyId, 6> kAllFamilies = {
    FamilyId::WE3, FamilyId::LL3, FamilyId::LN3, FamilyId::GEV, FamilyId::WE3_LL3, FamilyId::LL3_WE3};

std::string_view family_name(FamilyId f) noexcept;  // "WE3", "WE3-LL3", ...
std::string_view family_slug(FamilyId f) noexcept;  // "we3", "we3-ll3", ...

/// Accepts either spelling, case-insensitive, with '-' or '_' as separator.
/// Throws DomainError for unknown names.
FamilyId parse_family(std::string_view name);

constexpr bool is_composite(FamilyId f) noexcept {
    return f == FamilyId::WE3_LL3 || f == FamilyId::LL3_WE3;
}

constexpr std::size_t param_count(FamilyId f) noexcept { return is_composite(f) ? 6 : 3; }

/// Parameters of one family. Field names follow the role each symbol plays in
/// the density formulas:
///
///   WE3, LL3   mu = scale, omega = shape (exponent), delta = location
///   LN3        mu = mean of log(x - delta), omega = sd of log(x - delta)
///   GEV        mu = shape, omega = scale, delta = location
///
/// The composites carry a generator triple (mu, omega, delta) and a
/// transformer triple (lambda = scale, beta = shape, xi = location):
///
///   WE3_LL3    generator WE3, transformer LL3
///   LL3_WE3    generator LL3, transformer WE3
///
/// Note that descriptive texts on these models often call mu the shape and
/// omega the scale for WE3/LL3; in the formulas omega is the exponent.
struct DistParams {
    FamilyId family = FamilyId::WE3;
    double mu = 1.0;
    double omega = 1.0;
    double delta = 0.0;
    std::optional<double> lambda;
    std::optional<double> beta;
    std::optional<double> xi;

    static DistParams we3(double mu, double omega, double delta);
    static DistParams ll3(double mu, double omega, double delta);
    static DistParams ln3(double mu, double omega, double delta);
    static DistParams gev(double mu, double omega, double delta);
    static DistParams we3_ll3(double mu, double omega, double delta, double lambda, double beta, double xi);
    static DistParams ll3_we3(double mu, double omega, double delta, double lambda, double beta, double xi);

    /// Vector layout is (mu, omega, delta[, lambda, beta, xi]).
    static DistParams from_vector(FamilyId family, std::span<const double> v);
    std::vector<double> to_vector() const;

    bool operator==(const DistParams&) const = default;
};

struct Support {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool lower_open = true;

    bool contains(double x) const noexcept {
        return (lower_open ? x > lower : x >= lower) && x <= upper;
    }
};

/// Mathematical validity: finite values, positive scales and exponents,
/// composites with delta >= 0 and all three transformer fields present.
/// Throws InvalidParams with a reason.
void validate(const DistParams& p);
bool is_valid(const DistParams& p) noexcept;

/// The stricter constraints attached to the models when they are estimated:
/// LL3 omega >= 1, WE3_LL3 beta >= 1, LL3_WE3 omega >= 1.
bool satisfies_model_constraints(const DistParams& p) noexcept;

Support support(const DistParams& p);

// Densities and probabilities are total in x: outside the support pdf is 0 and
// cdf is 0 or 1. Invalid parameters throw InvalidParams.
double pdf(const DistParams& p, double x);
double log_pdf(const DistParams& p, double x);
double cdf(const DistParams& p, double x);
/// log(1 - cdf), accurate deep in the upper tail.
double log_survival(const DistParams& p, double x);

/// Throws DomainError unless 0 < q < 1.
double quantile(const DistParams& p, double q);

enum class Tail { Lower, Upper };

/// Quantile addressed by the log of a tail probability: the x with
/// log F(x) = log_prob (Lower) or log(1 - F(x)) = log_prob (Upper). Stays
/// accurate for probabilities far below machine epsilon.
/// Throws DomainError unless log_prob < 0.
double tail_quantile(const DistParams& p, double log_prob, Tail tail);

/// Inverse-cdf draws from a 64-bit Mersenne twister seeded with `seed`.
std::vector<double> sample(const DistParams& p, std::size_t n, std::uint64_t seed);

std::string to_string(const DistParams& p);

}  // namespace windfit
