#pragma once

#include <span>
#include <utility>
#include <vector>

#include "esbacktest/measures.hpp"

namespace esbacktest {

/// Enumerated choices for the increasing functions G in the scoring
/// families, each carrying its exact antiderivative. Zero is admitted only
/// as a G2 choice (it switches the ES term off).
enum class GChoice {
    Identity,        // G(x) = x,            antiderivative x^2/2
    Exponential,     // G(x) = e^x,          antiderivative e^x
    BoundedLogistic, // G(x) = e^x/(1+e^x),  antiderivative log(1+e^x)
    Zero,            // G(x) = 0,            antiderivative 0
};

double g_value(GChoice g, double x) noexcept;
double g_antiderivative(GChoice g, double x) noexcept;

/// Level alpha plus the (G1, G2) choice defining the joint score.
/// G1 must be strictly increasing (Zero rejected); G2 must be strictly
/// increasing with limit 0 at -infinity, or Zero (Identity rejected).
class ScoringSpec {
public:
    ScoringSpec(RiskLevel level, GChoice g1, GChoice g2);

    RiskLevel level() const noexcept { return level_; }
    GChoice g1() const noexcept { return g1_; }
    GChoice g2() const noexcept { return g2_; }

private:
    RiskLevel level_;
    GChoice g1_;
    GChoice g2_;
};

/// Per-period scores; all entries finite.
class ScoreSeries {
public:
    explicit ScoreSeries(std::vector<double> values);
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
};

/// VaR-only score: (1{x <= v} - alpha) * (G(v) - G(x)).
double score_var(GChoice g, RiskLevel level, double v, double x);

/// Joint (VaR, ES) score:
///   (1{x<=v} - alpha)(G1(v) - G1(x))
///     + (1/alpha) G2(e) 1{x<=v} (v - x) + G2(e)(e - v) - antiderivative2(e).
/// With g2 = Zero this coincides with score_var(g1, ...).
double score_var_es(const ScoringSpec& spec, double v, double e, double x);

struct VarEsForecast {
    double var;
    double es;
};

struct MeanScore {
    double mean;
    ScoreSeries series;
};

/// Mean of per-period joint scores; throws std::invalid_argument on
/// length mismatch or empty input.
MeanScore mean_score(const ScoringSpec& spec,
                     std::span<const VarEsForecast> forecasts,
                     std::span<const double> realizations);

/// E[S(v, e, X)] under the predictive distribution: deterministic adaptive
/// quadrature for Normal (absolute tolerance 1e-8, integration split at the
/// kink x = v), exact summation for Empirical.
double expected_score(const ScoringSpec& spec, const DistributionSpec& dist,
                      double v, double e);

/// Search box for the elicitability check; step applies to both axes.
struct GridSearchBox {
    double var_lo;
    double var_hi;
    double es_lo;
    double es_hi;
    double step;
};

struct ElicitabilityCheck {
    RiskPair argmin;        // grid point minimizing the expected score
    RiskPair truth;         // (var_of, es_of) of the distribution
    double gap;             // sup-norm distance between argmin and truth
    double min_expected_score;
};

/// Exhaustive grid minimization of expected_score. Ties resolve to the
/// lexicographically smallest (v, e) grid point, so the result does not
/// depend on evaluation order. The box must contain the true (VaR, ES)
/// pair. Grid rows are evaluated concurrently when OpenMP is enabled.
ElicitabilityCheck verify_elicitability(const ScoringSpec& spec,
                                        const DistributionSpec& dist,
                                        const GridSearchBox& box);

/// Single-threaded reference with identical results.
ElicitabilityCheck verify_elicitability_serial(const ScoringSpec& spec,
                                               const DistributionSpec& dist,
                                               const GridSearchBox& box);

} // namespace esbacktest
