#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace esbacktest {

/// Tail probability level alpha, restricted to the open interval (0,1).
class RiskLevel {
public:
    explicit RiskLevel(double alpha);
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

struct NormalDist {
    double mu;
    double sigma; // > 0, enforced by DistributionSpec::normal
};

struct EmpiricalDist {
    std::vector<double> sorted; // nondecreasing, size >= 1
};

/// A predictive distribution: parametric normal or an empirical sample.
/// Values are asset returns; losses live in the lower tail.
class DistributionSpec {
public:
    static DistributionSpec normal(double mu, double sigma);
    /// Takes the sample in any order; it is sorted on construction.
    static DistributionSpec empirical(std::vector<double> sample);

    bool is_normal() const noexcept { return std::holds_alternative<NormalDist>(v_); }
    const NormalDist& as_normal() const { return std::get<NormalDist>(v_); }
    const EmpiricalDist& as_empirical() const { return std::get<EmpiricalDist>(v_); }

private:
    explicit DistributionSpec(std::variant<NormalDist, EmpiricalDist> v) : v_(std::move(v)) {}
    std::variant<NormalDist, EmpiricalDist> v_;
};

/// The pair (VaR_alpha, ES_alpha); es <= var always.
struct RiskPair {
    double var;
    double es;
};

/// Lower alpha-quantile: the smallest x with P(X <= x) >= alpha.
double var_of(const DistributionSpec& dist, RiskLevel level);

/// ES_alpha = (1/alpha) * integral of VaR_beta over beta in (0, alpha].
/// Normal uses the closed form mu - (sigma/alpha)*phi(Phi^{-1}(alpha));
/// Empirical is the exact sum over the piecewise-constant quantile.
double es_of(const DistributionSpec& dist, RiskLevel level);

/// Closed-form (VaR, ES) for a normal distribution.
RiskPair normal_risk_pair(double mu, double sigma, RiskLevel level);

/// Probability integral transform F(x) of the predictive distribution.
double pit(const DistributionSpec& dist, double x);

} // namespace esbacktest
