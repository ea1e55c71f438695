#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "esbacktest/scoring.hpp"

namespace esbacktest {

enum class Zone { Green, Yellow, Red };

const char* to_string(Zone z) noexcept;

/// One period: realized value plus the competing (VaR, ES) forecasts made
/// at t-1. v/e are the internal procedure, v_star/e_star the standard one.
struct ForecastRecord {
    double x;
    double v;
    double e;
    double v_star;
    double e_star;

    bool operator==(const ForecastRecord&) const = default;
};

struct IidSample {};
struct NeweyWest {
    std::size_t lag; // must be < N
};
using VarianceEstimator = std::variant<IidSample, NeweyWest>;

/// Raised when the score-difference series has zero estimated variance
/// (identical forecasts, or scores that coincide everywhere).
class DegenerateSeriesError : public std::runtime_error {
public:
    explicit DegenerateSeriesError(const std::string& what)
        : std::runtime_error(what) {}
};

struct DmStatistic {
    double t2;
    double sigma_n;
};

struct ComparativeResult {
    double t2;
    double sigma_n;
    double p_superior; // p-value of H0-: internal at least as good
    double p_inferior; // p-value of H0+: internal at most as good
    Zone zone;
    std::size_t n;
    double mean_score_internal;
    double mean_score_standard;

    bool operator==(const ComparativeResult&) const = default;
};

/// t2 = mean(d) / sigma_N for a precomputed difference series d.
DmStatistic dm_from_differences(std::span<const double> diffs,
                                const VarianceEstimator& var_est);

/// Diebold-Mariano statistic on the joint-score differences
/// d_t = S(v_t, e_t, x_t) - S(v*_t, e*_t, x_t).
DmStatistic dm_statistic(const ScoringSpec& spec,
                         std::span<const ForecastRecord> records,
                         const VarianceEstimator& var_est);

/// Comparative backtest with three-zone decision at test level eta:
/// Green if t2 <= -z_{1-eta} (H0+ rejected, internal demonstrably superior),
/// Red if t2 >= z_{1-eta} (H0- rejected), Yellow otherwise.
ComparativeResult comparative_backtest(const ScoringSpec& spec,
                                       std::span<const ForecastRecord> records,
                                       const VarianceEstimator& var_est,
                                       double test_level = 0.05);

/// Same test scored with the VaR-only family (e columns ignored). Results
/// coincide with comparative_backtest under g2 = Zero.
ComparativeResult comparative_backtest_var(GChoice g, RiskLevel level,
                                           std::span<const ForecastRecord> records,
                                           const VarianceEstimator& var_est,
                                           double test_level = 0.05);

} // namespace esbacktest
