#pragma once

#include <cstddef>
#include <span>

#include "esbacktest/comparative.hpp"
#include "esbacktest/measures.hpp"

namespace esbacktest {

/// Basel traffic-light cumulative probability boundaries.
inline constexpr double kBaselGreenCum = 0.95;
inline constexpr double kBaselRedCum = 0.9999;

struct TrafficLightConfig {
    RiskLevel level = RiskLevel(0.01);
    std::size_t n = 250;
    double green_cum = kBaselGreenCum;
    double red_cum = kBaselRedCum;
};

struct VarObservation {
    double v; // VaR forecast
    double x; // realized value
};

struct CoverageResult {
    double statistic; // exceedance count, or Z for the ES test
    Zone zone;
    double p_value;

    bool operator==(const CoverageResult&) const = default;
};

struct TrafficLightBounds {
    std::size_t green_max; // largest k still green
    std::size_t red_min;   // smallest k already red
};

/// Zone boundaries from the Binomial(n, alpha) distribution:
/// green_max = max{k : P(K <= k) < green_cum},
/// red_min   = min{k : P(K <= k) >= red_cum}.
TrafficLightBounds traffic_light_bounds(const TrafficLightConfig& cfg);

/// Basel traffic-light test on the exceedance count k = #{t : x_t <= v_t}.
/// p_value = P(K >= k) under Binomial(n, alpha).
CoverageResult traffic_light_var(const TrafficLightConfig& cfg,
                                 std::span<const VarObservation> records);

/// Generalized coverage test for ES on predictive PIT values:
/// severity s_t = (1 - u_t/alpha) 1{u_t <= alpha},
/// Z = (mean(s) - alpha/2) / sqrt((alpha/3 - alpha^2/4) / n).
/// Zones one-sided: Green if Phi(Z) < 0.95, Red if Phi(Z) >= 0.9999.
CoverageResult es_coverage_test(RiskLevel level, std::span<const double> pits,
                                std::size_t n);

} // namespace esbacktest
