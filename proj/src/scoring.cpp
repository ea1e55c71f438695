#include "esbacktest/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "esbacktest/normal_dist.hpp"

namespace esbacktest {

double g_value(GChoice g, double x) noexcept {
    switch (g) {
    case GChoice::Identity:
        return x;
    case GChoice::Exponential:
        return std::exp(x);
    case GChoice::BoundedLogistic:
        if (x >= 0.0) {
            return 1.0 / (1.0 + std::exp(-x));
        } else {
            const double ex = std::exp(x);
            return ex / (1.0 + ex);
        }
    case GChoice::Zero:
        return 0.0;
    }
    return 0.0; // unreachable
}

double g_antiderivative(GChoice g, double x) noexcept {
    switch (g) {
    case GChoice::Identity:
        return 0.5 * x * x;
    case GChoice::Exponential:
        return std::exp(x);
    case GChoice::BoundedLogistic:
        // log(1 + e^x), written to avoid overflow for large x
        return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    case GChoice::Zero:
        return 0.0;
    }
    return 0.0; // unreachable
}

ScoringSpec::ScoringSpec(RiskLevel level, GChoice g1, GChoice g2)
    : level_(level), g1_(g1), g2_(g2) {
    if (g1 == GChoice::Zero) {
        throw std::invalid_argument("ScoringSpec: G1 must be strictly increasing");
    }
    if (g2 == GChoice::Identity) {
        throw std::invalid_argument(
            "ScoringSpec: G2 must vanish at -infinity (Identity is not admissible)");
    }
}

ScoreSeries::ScoreSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("ScoreSeries: need at least one period");
    }
    for (double s : values_) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("ScoreSeries: scores must be finite");
        }
    }
}

double score_var(GChoice g, RiskLevel level, double v, double x) {
    if (g == GChoice::Zero) {
        throw std::invalid_argument("score_var: G must be strictly increasing");
    }
    const double ind = (x <= v) ? 1.0 : 0.0;
    return (ind - level.alpha()) * (g_value(g, v) - g_value(g, x));
}

double score_var_es(const ScoringSpec& spec, double v, double e, double x) {
    const double alpha = spec.level().alpha();
    const double ind = (x <= v) ? 1.0 : 0.0;
    const double g2e = g_value(spec.g2(), e);
    return (ind - alpha) * (g_value(spec.g1(), v) - g_value(spec.g1(), x)) +
           g2e * ind * (v - x) / alpha + g2e * (e - v) -
           g_antiderivative(spec.g2(), e);
}

MeanScore mean_score(const ScoringSpec& spec, std::span<const VarEsForecast> forecasts,
                     std::span<const double> realizations) {
    if (forecasts.size() != realizations.size()) {
        throw std::invalid_argument("mean_score: forecasts and realizations differ in length");
    }
    if (forecasts.empty()) {
        throw std::invalid_argument("mean_score: need at least one period");
    }
    std::vector<double> scores(forecasts.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < forecasts.size(); ++t) {
        scores[t] = score_var_es(spec, forecasts[t].var, forecasts[t].es, realizations[t]);
        acc += scores[t];
    }
    return MeanScore{acc / static_cast<double>(forecasts.size()),
                     ScoreSeries(std::move(scores))};
}

namespace {

template <class F>
double simpson_recurse(const F& f, double a, double m, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

constexpr double kQuadTol = 1e-8;
constexpr double kTailWidth = 10.0; // integration window in units of sigma

} // namespace

double expected_score(const ScoringSpec& spec, const DistributionSpec& dist, double v,
                      double e) {
    if (!dist.is_normal()) {
        const auto& sample = dist.as_empirical().sorted;
        double acc = 0.0;
        for (double x : sample) {
            acc += score_var_es(spec, v, e, x);
        }
        return acc / static_cast<double>(sample.size());
    }
    const auto& nd = dist.as_normal();
    const double lo = nd.mu - kTailWidth * nd.sigma;
    const double hi = nd.mu + kTailWidth * nd.sigma;
    const auto integrand = [&](double x) {
        return score_var_es(spec, v, e, x) * normal_pdf((x - nd.mu) / nd.sigma) / nd.sigma;
    };
    // The integrand has a kink at x = v; integrate the smooth pieces.
    const double split = std::clamp(v, lo, hi);
    return adaptive_simpson(integrand, lo, split, 0.5 * kQuadTol) +
           adaptive_simpson(integrand, split, hi, 0.5 * kQuadTol);
}

namespace {

// Expected-score pieces that depend on v only. The e-dependence of the
// joint score enters through G2(e) and its antiderivative alone, so the
// grid objective at (v, e) is
//   a_term(v) + G2(e) * shortfall(v) / alpha + G2(e) (e - v) - antider2(e).
struct VSlice {
    double a_term;    // E[(1{X<=v} - alpha)(G1(v) - G1(X))]
    double shortfall; // E[1{X<=v} (v - X)]
};

VSlice expected_v_slice(const ScoringSpec& spec, const DistributionSpec& dist, double v) {
    const double alpha = spec.level().alpha();
    if (!dist.is_normal()) {
        const auto& sample = dist.as_empirical().sorted;
        const double n = static_cast<double>(sample.size());
        double a = 0.0;
        double b = 0.0;
        for (double x : sample) {
            const double ind = (x <= v) ? 1.0 : 0.0;
            a += (ind - alpha) * (g_value(spec.g1(), v) - g_value(spec.g1(), x));
            b += ind * (v - x);
        }
        return VSlice{a / n, b / n};
    }
    const auto& nd = dist.as_normal();
    const double lo = nd.mu - kTailWidth * nd.sigma;
    const double hi = nd.mu + kTailWidth * nd.sigma;
    const double split = std::clamp(v, lo, hi);
    const auto density = [&](double x) { return normal_pdf((x - nd.mu) / nd.sigma) / nd.sigma; };
    const auto a_integrand = [&](double x) {
        const double ind = (x <= v) ? 1.0 : 0.0;
        return (ind - alpha) * (g_value(spec.g1(), v) - g_value(spec.g1(), x)) * density(x);
    };
    const auto b_integrand = [&](double x) { return (v - x) * density(x); };
    const double a = adaptive_simpson(a_integrand, lo, split, 0.25 * kQuadTol) +
                     adaptive_simpson(a_integrand, split, hi, 0.25 * kQuadTol);
    const double b = adaptive_simpson(b_integrand, lo, split, 0.25 * kQuadTol);
    return VSlice{a, b};
}

ElicitabilityCheck grid_minimize(const ScoringSpec& spec, const DistributionSpec& dist,
                                 const GridSearchBox& box, bool parallel) {
    if (!(box.step > 0.0)) {
        throw std::invalid_argument("verify_elicitability: step must be > 0");
    }
    const RiskPair truth{var_of(dist, spec.level()), es_of(dist, spec.level())};
    if (truth.var < box.var_lo || truth.var > box.var_hi || truth.es < box.es_lo ||
        truth.es > box.es_hi) {
        throw std::invalid_argument(
            "verify_elicitability: search box must contain the true (VaR, ES) pair");
    }
    const auto count = [&](double lo, double hi) {
        return static_cast<std::int64_t>(std::floor((hi - lo) / box.step + 1e-9)) + 1;
    };
    const std::int64_t nv = count(box.var_lo, box.var_hi);
    const std::int64_t ne = count(box.es_lo, box.es_hi);

    const double alpha = spec.level().alpha();
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_iv = 0;
    std::int64_t best_ie = 0;

#pragma omp parallel if (parallel)
    {
        double local_best = std::numeric_limits<double>::infinity();
        std::int64_t local_iv = 0;
        std::int64_t local_ie = 0;
#pragma omp for schedule(dynamic, 8) nowait
        for (std::int64_t iv = 0; iv < nv; ++iv) {
            const double v = box.var_lo + static_cast<double>(iv) * box.step;
            const VSlice slice = expected_v_slice(spec, dist, v);
            for (std::int64_t ie = 0; ie < ne; ++ie) {
                const double e = box.es_lo + static_cast<double>(ie) * box.step;
                const double g2e = g_value(spec.g2(), e);
                const double val = slice.a_term + g2e * slice.shortfall / alpha +
                                   g2e * (e - v) - g_antiderivative(spec.g2(), e);
                if (val < local_best ||
                    (val == local_best &&
                     (iv < local_iv || (iv == local_iv && ie < local_ie)))) {
                    local_best = val;
                    local_iv = iv;
                    local_ie = ie;
                }
            }
        }
#pragma omp critical
        {
            if (local_best < best ||
                (local_best == best &&
                 (local_iv < best_iv || (local_iv == best_iv && local_ie < best_ie)))) {
                best = local_best;
                best_iv = local_iv;
                best_ie = local_ie;
            }
        }
    }

    const RiskPair argmin{box.var_lo + static_cast<double>(best_iv) * box.step,
                          box.es_lo + static_cast<double>(best_ie) * box.step};
    const double gap =
        std::max(std::fabs(argmin.var - truth.var), std::fabs(argmin.es - truth.es));
    return ElicitabilityCheck{argmin, truth, gap, best};
}

} // namespace

ElicitabilityCheck verify_elicitability(const ScoringSpec& spec, const DistributionSpec& dist,
                                        const GridSearchBox& box) {
    return grid_minimize(spec, dist, box, true);
}

ElicitabilityCheck verify_elicitability_serial(const ScoringSpec& spec,
                                               const DistributionSpec& dist,
                                               const GridSearchBox& box) {
    return grid_minimize(spec, dist, box, false);
}

} // namespace esbacktest
