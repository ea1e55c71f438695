#include "esbacktest/traditional.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "esbacktest/normal_dist.hpp"

namespace esbacktest {

namespace {

// Binomial(n, p) probabilities via the stable ratio recurrence.
std::vector<double> binomial_pmf(std::size_t n, double p) {
    std::vector<double> pmf(n + 1);
    pmf[0] = std::pow(1.0 - p, static_cast<double>(n));
    const double ratio = p / (1.0 - p);
    for (std::size_t k = 0; k < n; ++k) {
        pmf[k + 1] = pmf[k] * ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return pmf;
}

void validate_config(const TrafficLightConfig& cfg) {
    if (!(cfg.green_cum > 0.0 && cfg.green_cum < cfg.red_cum && cfg.red_cum < 1.0)) {
        throw std::invalid_argument("TrafficLightConfig: require 0 < green_cum < red_cum < 1");
    }
    if (cfg.n == 0) {
        throw std::invalid_argument("TrafficLightConfig: n must be positive");
    }
}

} // namespace

TrafficLightBounds traffic_light_bounds(const TrafficLightConfig& cfg) {
    validate_config(cfg);
    const std::vector<double> pmf = binomial_pmf(cfg.n, cfg.level.alpha());
    std::size_t green_max = 0;
    std::size_t red_min = cfg.n;
    double cum = 0.0;
    bool red_found = false;
    for (std::size_t k = 0; k <= cfg.n; ++k) {
        cum += pmf[k];
        if (cum < cfg.green_cum) green_max = k;
        if (!red_found && cum >= cfg.red_cum) {
            red_min = k;
            red_found = true;
        }
    }
    return TrafficLightBounds{green_max, red_min};
}

CoverageResult traffic_light_var(const TrafficLightConfig& cfg,
                                 std::span<const VarObservation> records) {
    validate_config(cfg);
    if (records.size() != cfg.n) {
        throw std::invalid_argument("traffic_light_var: record count must equal cfg.n");
    }
    std::size_t k = 0;
    for (const auto& r : records) {
        if (r.x <= r.v) ++k;
    }
    const TrafficLightBounds bounds = traffic_light_bounds(cfg);
    Zone zone = Zone::Yellow;
    if (k <= bounds.green_max) {
        zone = Zone::Green;
    } else if (k >= bounds.red_min) {
        zone = Zone::Red;
    }
    const std::vector<double> pmf = binomial_pmf(cfg.n, cfg.level.alpha());
    double tail = 0.0;
    for (std::size_t j = k; j <= cfg.n; ++j) tail += pmf[j];
    if (tail > 1.0) tail = 1.0;
    return CoverageResult{static_cast<double>(k), zone, tail};
}

CoverageResult es_coverage_test(RiskLevel level, std::span<const double> pits,
                                std::size_t n) {
    if (pits.size() != n || n == 0) {
        throw std::invalid_argument("es_coverage_test: need exactly n PIT values, n >= 1");
    }
    const double alpha = level.alpha();
    double acc = 0.0;
    for (double u : pits) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw std::domain_error("es_coverage_test: PIT values must lie in [0,1]");
        }
        if (u <= alpha) acc += 1.0 - u / alpha;
    }
    const double mean_severity = acc / static_cast<double>(n);
    const double null_var = alpha / 3.0 - alpha * alpha / 4.0;
    const double z = (mean_severity - alpha / 2.0) /
                     std::sqrt(null_var / static_cast<double>(n));
    const double cum = normal_cdf(z);
    Zone zone = Zone::Yellow;
    if (cum < kBaselGreenCum) {
        zone = Zone::Green;
    } else if (cum >= kBaselRedCum) {
        zone = Zone::Red;
    }
    return CoverageResult{z, zone, normal_cdf(-z)};
}

} // namespace esbacktest
