#include "esbacktest/comparative.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "esbacktest/normal_dist.hpp"

namespace esbacktest {

const char* to_string(Zone z) noexcept {
    switch (z) {
    case Zone::Green:
        return "green";
    case Zone::Yellow:
        return "yellow";
    case Zone::Red:
        return "red";
    }
    return "?";
}

namespace {

double mean_of(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sigma_iid(std::span<const double> d, double mean) {
    const double n = static_cast<double>(d.size());
    double ss = 0.0;
    for (double x : d) {
        const double c = x - mean;
        ss += c * c;
    }
    return std::sqrt(ss / (n - 1.0) / n);
}

// Bartlett-weighted long-run variance of the mean.
double sigma_newey_west(std::span<const double> d, double mean, std::size_t lag) {
    const std::size_t n = d.size();
    const double dn = static_cast<double>(n);
    double lrv = 0.0;
    for (std::size_t l = 0; l <= lag; ++l) {
        double gamma = 0.0;
        for (std::size_t t = l; t < n; ++t) {
            gamma += (d[t] - mean) * (d[t - l] - mean);
        }
        gamma /= dn;
        const double w = 1.0 - static_cast<double>(l) / static_cast<double>(lag + 1);
        lrv += (l == 0 ? 1.0 : 2.0 * w) * gamma;
    }
    if (lrv < 0.0) lrv = 0.0;
    return std::sqrt(lrv / dn);
}

struct ScoredRecords {
    std::vector<double> internal;
    std::vector<double> standard;
    std::vector<double> diffs;
};

template <class Scorer>
ScoredRecords score_records(std::span<const ForecastRecord> records, const Scorer& scorer) {
    ScoredRecords out;
    out.internal.reserve(records.size());
    out.standard.reserve(records.size());
    out.diffs.reserve(records.size());
    for (const auto& r : records) {
        const double si = scorer(r.v, r.e, r.x);
        const double ss = scorer(r.v_star, r.e_star, r.x);
        out.internal.push_back(si);
        out.standard.push_back(ss);
        out.diffs.push_back(si - ss);
    }
    return out;
}

template <class Scorer>
ComparativeResult backtest_impl(std::span<const ForecastRecord> records,
                                const VarianceEstimator& var_est, double test_level,
                                const Scorer& scorer) {
    if (!(test_level > 0.0 && test_level < 0.5)) {
        throw std::invalid_argument("comparative backtest: test level must lie in (0, 0.5)");
    }
    const ScoredRecords scored = score_records(records, scorer);
    const DmStatistic dm = dm_from_differences(scored.diffs, var_est);
    const double z = normal_quantile(1.0 - test_level);
    Zone zone = Zone::Yellow;
    if (dm.t2 <= -z) {
        zone = Zone::Green;
    } else if (dm.t2 >= z) {
        zone = Zone::Red;
    }
    return ComparativeResult{dm.t2,
                             dm.sigma_n,
                             normal_cdf(-dm.t2),
                             normal_cdf(dm.t2),
                             zone,
                             records.size(),
                             mean_of(scored.internal),
                             mean_of(scored.standard)};
}

} // namespace

DmStatistic dm_from_differences(std::span<const double> diffs,
                                const VarianceEstimator& var_est) {
    if (diffs.size() < 2) {
        throw std::invalid_argument("dm_statistic: need at least two periods");
    }
    const double mean = mean_of(diffs);
    double sigma = 0.0;
    if (std::holds_alternative<IidSample>(var_est)) {
        sigma = sigma_iid(diffs, mean);
    } else {
        const auto& nw = std::get<NeweyWest>(var_est);
        if (nw.lag >= diffs.size()) {
            throw std::invalid_argument("dm_statistic: Newey-West lag must be < N");
        }
        sigma = sigma_newey_west(diffs, mean, nw.lag);
    }
    if (!(sigma > 0.0)) {
        throw DegenerateSeriesError(
            "score-difference series has zero variance (identical forecasts or coinciding scores)");
    }
    return DmStatistic{mean / sigma, sigma};
}

DmStatistic dm_statistic(const ScoringSpec& spec, std::span<const ForecastRecord> records,
                         const VarianceEstimator& var_est) {
    const auto scorer = [&](double v, double e, double x) {
        return score_var_es(spec, v, e, x);
    };
    return dm_from_differences(score_records(records, scorer).diffs, var_est);
}

ComparativeResult comparative_backtest(const ScoringSpec& spec,
                                       std::span<const ForecastRecord> records,
                                       const VarianceEstimator& var_est, double test_level) {
    return backtest_impl(records, var_est, test_level, [&](double v, double e, double x) {
        return score_var_es(spec, v, e, x);
    });
}

ComparativeResult comparative_backtest_var(GChoice g, RiskLevel level,
                                           std::span<const ForecastRecord> records,
                                           const VarianceEstimator& var_est,
                                           double test_level) {
    return backtest_impl(records, var_est, test_level, [&](double v, double /*e*/, double x) {
        return score_var(g, level, v, x);
    });
}

} // namespace esbacktest
