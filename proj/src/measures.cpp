#include "esbacktest/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "esbacktest/normal_dist.hpp"

namespace esbacktest {

RiskLevel::RiskLevel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("RiskLevel: alpha must lie in (0,1)");
    }
}

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw std::invalid_argument("DistributionSpec::normal: require finite mu and sigma > 0");
    }
    return DistributionSpec(NormalDist{mu, sigma});
}

DistributionSpec DistributionSpec::empirical(std::vector<double> sample) {
    if (sample.empty()) {
        throw std::invalid_argument("DistributionSpec::empirical: sample must be nonempty");
    }
    for (double v : sample) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("DistributionSpec::empirical: sample values must be finite");
        }
    }
    std::sort(sample.begin(), sample.end());
    return DistributionSpec(EmpiricalDist{std::move(sample)});
}

namespace {

// Smallest k in [1, n] with k/n >= alpha, evaluated with the same
// floating-point comparisons as a direct scan of the infimum definition.
std::size_t quantile_index(std::size_t n, double alpha) {
    const double dn = static_cast<double>(n);
    std::size_t k = static_cast<std::size_t>(std::ceil(alpha * dn));
    k = std::clamp<std::size_t>(k, 1, n);
    while (k > 1 && static_cast<double>(k - 1) / dn >= alpha) --k;
    while (k < n && static_cast<double>(k) / dn < alpha) ++k;
    return k;
}

} // namespace

double var_of(const DistributionSpec& dist, RiskLevel level) {
    const double alpha = level.alpha();
    if (dist.is_normal()) {
        const auto& nd = dist.as_normal();
        return nd.mu + nd.sigma * normal_quantile(alpha);
    }
    const auto& sample = dist.as_empirical().sorted;
    return sample[quantile_index(sample.size(), alpha) - 1];
}

double es_of(const DistributionSpec& dist, RiskLevel level) {
    const double alpha = level.alpha();
    if (dist.is_normal()) {
        const auto& nd = dist.as_normal();
        return nd.mu - nd.sigma / alpha * normal_pdf(normal_quantile(alpha));
    }
    // The quantile is constant at x_(j) on ((j-1)/n, j/n], so the integral
    // over (0, alpha] is a finite sum plus a partial strip at the top.
    const auto& sample = dist.as_empirical().sorted;
    const std::size_t n = sample.size();
    const double dn = static_cast<double>(n);
    const std::size_t k = quantile_index(n, alpha);
    double acc = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
        acc += sample[j - 1] / dn;
    }
    acc += sample[k - 1] * (alpha - static_cast<double>(k - 1) / dn);
    return acc / alpha;
}

RiskPair normal_risk_pair(double mu, double sigma, RiskLevel level) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("normal_risk_pair: sigma must be > 0");
    }
    const double q = normal_quantile(level.alpha());
    return RiskPair{mu + sigma * q, mu - sigma / level.alpha() * normal_pdf(q)};
}

double pit(const DistributionSpec& dist, double x) {
    if (dist.is_normal()) {
        const auto& nd = dist.as_normal();
        return normal_cdf((x - nd.mu) / nd.sigma);
    }
    const auto& sample = dist.as_empirical().sorted;
    const auto count = std::upper_bound(sample.begin(), sample.end(), x) - sample.begin();
    return static_cast<double>(count) / static_cast<double>(sample.size());
}

} // namespace esbacktest
