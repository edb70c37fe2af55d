// Reference composite fits and goodness-of-fit criteria for a 2018 three-hourly
// wind record (n = 2920), used as fixtures.
#pragma once

#include <array>
#include <string_view>

#include "windfit/distributions.hpp"
#include "windfit/gof.hpp"

namespace fixtures {

struct CompositeRow {
    std::string_view season;
    windfit::FamilyId family;
    std::array<double, 6> theta;  // mu, omega, delta, lambda, beta, xi

    windfit::DistParams params() const { return windfit::DistParams::from_vector(family, theta); }
};

using windfit::FamilyId;

// Fitted composite parameters, five seasons x two composites.
inline constexpr std::array<CompositeRow, 10> kCompositeRows = {{
    {"annual", FamilyId::WE3_LL3, {0.9619, 1.8805, 0.7394, 3.1318, 0.7489, -2.3133}},
    {"annual", FamilyId::LL3_WE3, {3.4232, 1.5701, 1.6756, 6.1670, 1.3805, -6.2797}},
    {"winter", FamilyId::WE3_LL3, {6.4659, 2.2152, 1.0062, 0.2178, 0.7331, -0.4352}},
    {"winter", FamilyId::LL3_WE3, {3.4857, 6.4302, 6.1397, 0.6950, 0.3113, -8.6068}},
    {"spring", FamilyId::WE3_LL3, {3.8217, 1.2911, 4.0028, 7.5347, 2.3723, -3.5170}},
    {"spring", FamilyId::LL3_WE3, {1.9780, 2.2705, 0.6022, 3.6228, 0.7401, -1.7236}},
    {"summer", FamilyId::WE3_LL3, {2.3270, 3.2969, 2.5366, 0.1830, 0.4260, -2.1687}},
    {"summer", FamilyId::LL3_WE3, {2.4518, 3.9466, 2.3182, 3.6378, 0.5017, -6.7806}},
    {"autumn", FamilyId::WE3_LL3, {8.2953, 1.1520, 5.9965, 2.9900, 2.0701, -7.1144}},
    {"autumn", FamilyId::LL3_WE3, {3.1284, 4.4782, 1.1355, 2.3734, 0.4781, -4.3178}},
}};

struct CriteriaRow {
    FamilyId family;
    double ks, r2, rmse, chi2;
    std::size_t rank;
};

struct SeasonCriteria {
    std::string_view season;
    std::array<CriteriaRow, 6> rows;
};

// Goodness-of-fit criteria with their reference ranks.
inline constexpr std::array<SeasonCriteria, 5> kCriteria = {{
    {"annual",
     {{{FamilyId::WE3, 0.1354, 0.9706, 0.0495, 23.9369, 6},
       {FamilyId::LL3, 0.1073, 0.9780, 0.0428, 18.8253, 2},
       {FamilyId::LN3, 0.1124, 0.9771, 0.0436, 19.5499, 3},
       {FamilyId::GEV, 0.1213, 0.9755, 0.0452, 21.6542, 4},
       {FamilyId::WE3_LL3, 0.1321, 0.9719, 0.0484, 23.3270, 5},
       {FamilyId::LL3_WE3, 0.0992, 0.9793, 0.0415, 18.0069, 1}}}},
    {"winter",
     {{{FamilyId::WE3, 0.2107, 0.9070, 0.0879, 13.6159, 6},
       {FamilyId::LL3, 0.1458, 0.9484, 0.0655, 9.5749, 2},
       {FamilyId::LN3, 0.1793, 0.9310, 0.0757, 11.1246, 3},
       {FamilyId::GEV, 0.1802, 0.9303, 0.0761, 11.6164, 4},
       {FamilyId::WE3_LL3, 0.2080, 0.9092, 0.0868, 13.2413, 5},
       {FamilyId::LL3_WE3, 0.1455, 0.9487, 0.0653, 9.4984, 1}}}},
    {"spring",
     {{{FamilyId::WE3, 0.1376, 0.9678, 0.0517, 6.4234, 5},
       {FamilyId::LL3, 0.1047, 0.9798, 0.0409, 4.3847, 2},
       {FamilyId::LN3, 0.1110, 0.9781, 0.0426, 4.6806, 4},
       {FamilyId::GEV, 0.1085, 0.9796, 0.0411, 4.4638, 3},
       {FamilyId::WE3_LL3, 0.1475, 0.9602, 0.0575, 7.5979, 6},
       {FamilyId::LL3_WE3, 0.0981, 0.9814, 0.0394, 4.1034, 1}}}},
    {"summer",
     {{{FamilyId::WE3, 0.0713, 0.9882, 0.0313, 2.8987, 2},
       {FamilyId::LL3, 0.0833, 0.9859, 0.0342, 3.1690, 6},
       {FamilyId::LN3, 0.0763, 0.9884, 0.0311, 2.7490, 3},
       {FamilyId::GEV, 0.0788, 0.9879, 0.0318, 2.8311, 4},
       {FamilyId::WE3_LL3, 0.0709, 0.9889, 0.0303, 2.7284, 1},
       {FamilyId::LL3_WE3, 0.0791, 0.9867, 0.0332, 3.0047, 5}}}},
    {"autumn",
     {{{FamilyId::WE3, 0.1371, 0.9753, 0.0453, 6.0072, 5},
       {FamilyId::LL3, 0.1048, 0.9792, 0.0416, 4.4866, 2},
       {FamilyId::LN3, 0.1082, 0.9789, 0.0415, 4.6498, 3},
       {FamilyId::GEV, 0.1147, 0.9787, 0.0421, 4.6711, 4},
       {FamilyId::WE3_LL3, 0.1512, 0.9713, 0.0488, 7.3538, 6},
       {FamilyId::LL3_WE3, 0.1021, 0.9800, 0.0408, 4.4397, 1}}}},
}};

inline std::vector<std::pair<FamilyId, windfit::gof::GofReport>> reports_for(const SeasonCriteria& s) {
    std::vector<std::pair<FamilyId, windfit::gof::GofReport>> out;
    for (const auto& r : s.rows) out.push_back({r.family, {r.ks, r.r2, r.rmse, r.chi2, std::nullopt}});
    return out;
}

}  // namespace fixtures
