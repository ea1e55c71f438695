#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "esbacktest/measures.hpp"
#include "esbacktest/scoring.hpp"
#include "oracles.hpp"

using namespace esbacktest;

namespace {

oracle::GKind to_oracle(GChoice g) {
    switch (g) {
    case GChoice::Identity:
        return oracle::GKind::Identity;
    case GChoice::Exponential:
        return oracle::GKind::Exponential;
    case GChoice::BoundedLogistic:
        return oracle::GKind::Logistic;
    case GChoice::Zero:
        return oracle::GKind::Zero;
    }
    return oracle::GKind::Zero;
}

} // namespace

TEST_CASE("G choices: strictly increasing, tail limit, antiderivative") {
    const std::vector<GChoice> increasing = {GChoice::Identity, GChoice::Exponential,
                                             GChoice::BoundedLogistic};
    for (GChoice g : increasing) {
        for (double a = -6.0; a < 6.0; a += 0.25) {
            CHECK(g_value(g, a) < g_value(g, a + 0.25));
        }
    }
    CHECK(g_value(GChoice::Exponential, -40.0) < 1e-15);
    CHECK(g_value(GChoice::BoundedLogistic, -40.0) < 1e-15);

    // antiderivative' = G by central differences
    const double h = 1e-4;
    for (GChoice g : {GChoice::Identity, GChoice::Exponential, GChoice::BoundedLogistic,
                      GChoice::Zero}) {
        for (double x = -3.0; x <= 3.0; x += 0.37) {
            const double diff =
                (g_antiderivative(g, x + h) - g_antiderivative(g, x - h)) / (2.0 * h);
            CHECK(diff == doctest::Approx(g_value(g, x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("scoring spec validation") {
    CHECK_THROWS_AS(ScoringSpec(RiskLevel(0.1), GChoice::Zero, GChoice::Exponential),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScoringSpec(RiskLevel(0.1), GChoice::Identity, GChoice::Identity),
                    std::invalid_argument);
    CHECK_NOTHROW(ScoringSpec(RiskLevel(0.1), GChoice::Identity, GChoice::Zero));
    CHECK_NOTHROW(ScoringSpec(RiskLevel(0.1), GChoice::Exponential, GChoice::BoundedLogistic));
}

TEST_CASE("score_var examples and pinball identity") {
    CHECK(score_var(GChoice::Identity, RiskLevel(0.05), 1.0, 1.0) == 0.0);
    CHECK(score_var(GChoice::Identity, RiskLevel(0.25), 2.0, 1.0) == 0.75);
    CHECK(score_var(GChoice::Identity, RiskLevel(0.25), 0.0, 1.0) == 0.25);
    CHECK_THROWS_AS(score_var(GChoice::Zero, RiskLevel(0.25), 0.0, 1.0), std::invalid_argument);

    // With G the identity the score is exactly the quantile (pinball) loss.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    std::uniform_real_distribution<double> alpha_draw(0.01, 0.99);
    for (int i = 0; i < 2000; ++i) {
        const double v = unif(rng), x = unif(rng), alpha = alpha_draw(rng);
        CHECK(score_var(GChoice::Identity, RiskLevel(alpha), v, x) ==
              oracle::pinball(alpha, v, x));
    }
}

TEST_CASE("score_var_es examples") {
    // reduces to score_var at x = v
    const ScoringSpec zero_spec(RiskLevel(0.3), GChoice::Identity, GChoice::Zero);
    CHECK(score_var_es(zero_spec, 1.0, -5.0, 1.0) == 0.0);

    const ScoringSpec exp_spec(RiskLevel(0.5), GChoice::Identity, GChoice::Exponential);
    CHECK(score_var_es(exp_spec, 0.0, 0.0, 0.0) == -1.0);

    const ScoringSpec logi_spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    CHECK(score_var_es(logi_spec, 0.0, -1.0, 1.0) ==
          doctest::Approx(-0.55720310888821795).epsilon(1e-14));
}

TEST_CASE("score_var_es agrees with an independently assembled reference") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    std::uniform_real_distribution<double> alpha_draw(0.01, 0.99);
    const std::vector<GChoice> g1s = {GChoice::Identity, GChoice::Exponential,
                                      GChoice::BoundedLogistic};
    const std::vector<GChoice> g2s = {GChoice::Exponential, GChoice::BoundedLogistic,
                                      GChoice::Zero};
    for (int i = 0; i < 3000; ++i) {
        const GChoice g1 = g1s[i % g1s.size()];
        const GChoice g2 = g2s[(i / 3) % g2s.size()];
        const double alpha = alpha_draw(rng);
        const ScoringSpec spec(RiskLevel(alpha), g1, g2);
        const double v = unif(rng), e = unif(rng), x = unif(rng);
        const double expected =
            oracle::joint_score_ref(alpha, to_oracle(g1), to_oracle(g2), v, e, x);
        CHECK(score_var_es(spec, v, e, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reduction: g2 = Zero collapses to the VaR-only score exactly") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    std::uniform_real_distribution<double> alpha_draw(0.001, 0.999);
    for (int i = 0; i < 20000; ++i) {
        const GChoice g1 = (i % 3 == 0)   ? GChoice::Identity
                           : (i % 3 == 1) ? GChoice::Exponential
                                          : GChoice::BoundedLogistic;
        const double alpha = alpha_draw(rng);
        const ScoringSpec spec(RiskLevel(alpha), g1, GChoice::Zero);
        const double v = unif(rng), e = unif(rng), x = unif(rng);
        CHECK(score_var_es(spec, v, e, x) == score_var(g1, RiskLevel(alpha), v, x));
    }
}

TEST_CASE("decomposition: incremental v-dependence beyond the VaR score is linear") {
    // With the indicator fixed (x above both v's), the joint-minus-VaR
    // difference moves only through -G2(e) * v.
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double v1 = unif(rng);
        const double v2 = unif(rng);
        const double e = unif(rng);
        const double x = std::max(v1, v2) + 0.5 + std::fabs(unif(rng));
        const ScoringSpec spec(RiskLevel(0.1), GChoice::Identity, GChoice::BoundedLogistic);
        const double diff1 = score_var_es(spec, v1, e, x) -
                             score_var(GChoice::Identity, RiskLevel(0.1), v1, x);
        const double diff2 = score_var_es(spec, v2, e, x) -
                             score_var(GChoice::Identity, RiskLevel(0.1), v2, x);
        CHECK(diff1 - diff2 ==
              doctest::Approx(g_value(GChoice::BoundedLogistic, e) * (v2 - v1)).epsilon(1e-10));
    }
}

TEST_CASE("mean_score") {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);

    const std::vector<VarEsForecast> one = {{-1.9, -2.3}};
    const std::vector<double> one_x = {0.4};
    CHECK(mean_score(spec, one, one_x).mean == score_var_es(spec, -1.9, -2.3, 0.4));

    const std::vector<VarEsForecast> constant(250, VarEsForecast{-1.9, -2.3});
    const std::vector<double> constant_x(250, 0.4);
    CHECK(mean_score(spec, constant, constant_x).mean ==
          doctest::Approx(score_var_es(spec, -1.9, -2.3, 0.4)).epsilon(1e-14));

    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<VarEsForecast> forecasts(10);
    std::vector<double> xs(10);
    for (std::size_t t = 0; t < 10; ++t) {
        forecasts[t] = {unif(rng), unif(rng) - 2.0};
        xs[t] = unif(rng);
    }
    double acc = 0.0;
    for (std::size_t t = 0; t < 10; ++t) {
        acc += score_var_es(spec, forecasts[t].var, forecasts[t].es, xs[t]);
    }
    const MeanScore ms = mean_score(spec, forecasts, xs);
    CHECK(ms.mean == acc / 10.0);
    CHECK(ms.series.size() == 10);

    // permutation invariance
    std::vector<std::size_t> perm(10);
    for (std::size_t t = 0; t < 10; ++t) perm[t] = t;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VarEsForecast> pf(10);
    std::vector<double> px(10);
    for (std::size_t t = 0; t < 10; ++t) {
        pf[t] = forecasts[perm[t]];
        px[t] = xs[perm[t]];
    }
    CHECK(mean_score(spec, pf, px).mean == doctest::Approx(ms.mean).epsilon(1e-13));

    const std::vector<double> short_x = {0.0};
    CHECK_THROWS_AS(mean_score(spec, forecasts, short_x), std::invalid_argument);
    CHECK_THROWS_AS(mean_score(spec, {}, {}), std::invalid_argument);
}

TEST_CASE("score series rejects non-finite entries") {
    CHECK_THROWS_AS(ScoreSeries({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(ScoreSeries({std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScoreSeries({}), std::invalid_argument);
}

TEST_CASE("expected_score: empirical is the exact atom average") {
    const ScoringSpec spec(RiskLevel(0.5), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::empirical({-1.0, 1.0});
    CHECK(expected_score(spec, dist, -1.0, -1.0) ==
          doctest::Approx(0.18673831248177717).epsilon(1e-14));
}

TEST_CASE("expected_score: g2 = Zero makes the value independent of e") {
    const ScoringSpec spec(RiskLevel(0.1), GChoice::Identity, GChoice::Zero);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    const double at_minus2 = expected_score(spec, dist, -1.0, -2.0);
    const double at_plus3 = expected_score(spec, dist, -1.0, 3.0);
    CHECK(at_minus2 == at_plus3);
}

TEST_CASE("expected_score: normal quadrature against an independent integrator") {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.3, 1.7);
    for (auto [v, e] : {std::pair{-3.0, -3.5}, std::pair{-2.0, -2.5}, std::pair{0.5, -1.0}}) {
        const auto integrand = [&, v = v, e = e](double x) {
            return score_var_es(spec, v, e, x) * oracle::std_normal_pdf((x - 0.3) / 1.7) / 1.7;
        };
        const double lo = 0.3 - 12.0 * 1.7;
        const double hi = 0.3 + 12.0 * 1.7;
        const double reference =
            oracle::integrate(integrand, lo, v, 1e-10) + oracle::integrate(integrand, v, hi, 1e-10);
        CHECK(expected_score(spec, dist, v, e) == doctest::Approx(reference).epsilon(1e-7));
    }
}

TEST_CASE("expected_score minimized at the true pair on a local normal grid") {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    const double tv = var_of(dist, RiskLevel(0.025));
    const double te = es_of(dist, RiskLevel(0.025));
    const double at_truth = expected_score(spec, dist, tv, te);
    for (double dv : {-0.25, -0.1, 0.0, 0.1, 0.25}) {
        for (double de : {-0.25, -0.1, 0.0, 0.1, 0.25}) {
            if (dv == 0.0 && de == 0.0) continue;
            CHECK(at_truth < expected_score(spec, dist, tv + dv, te + de));
        }
    }
}

TEST_CASE("consistency: empirical truth beats every grid point") {
    std::mt19937_64 rng(133);
    std::uniform_real_distribution<double> unif(-1.5, 1.5);

    const auto run_case = [&](double alpha, std::size_t n) {
        std::vector<double> sample(n);
        for (auto& x : sample) x = unif(rng);
        const auto dist = DistributionSpec::empirical(sample);
        const ScoringSpec spec(RiskLevel(alpha), GChoice::Identity, GChoice::BoundedLogistic);
        const double tv = var_of(dist, RiskLevel(alpha));
        const double te = es_of(dist, RiskLevel(alpha));
        const double best = expected_score(spec, dist, tv, te);
        // > 10^4 candidate pairs covering the truth
        for (int iv = 0; iv <= 100; ++iv) {
            for (int ie = 0; ie <= 100; ++ie) {
                const double v = tv - 1.0 + 0.02 * iv;
                const double e = te - 1.0 + 0.02 * ie;
                CHECK(best <= expected_score(spec, dist, v, e) + 1e-12);
            }
        }
    };

    run_case(0.25, 3);
    run_case(0.25, 7);
    run_case(0.5, 5);
    // alpha * n an integer: quantile boundary case, ties allowed by <=
    run_case(0.025, 40);
}

TEST_CASE("verify_elicitability on empirical samples") {
    // 4-point sample with a tied middle atom so the 0.5-quantile is strict
    const auto dist = DistributionSpec::empirical({-1.5, -0.2, -0.2, 1.0});
    const ScoringSpec spec(RiskLevel(0.5), GChoice::Identity, GChoice::BoundedLogistic);
    const double tv = var_of(dist, RiskLevel(0.5));
    const double te = es_of(dist, RiskLevel(0.5));
    CHECK(tv == -0.2);
    CHECK(te == doctest::Approx(-0.85).epsilon(1e-15));

    const GridSearchBox box{tv - 0.5, tv + 0.5, te - 0.5, te + 0.5, 0.01};
    const ElicitabilityCheck check = verify_elicitability(spec, dist, box);
    CHECK(check.argmin.var == doctest::Approx(tv).epsilon(1e-12));
    CHECK(check.argmin.es == doctest::Approx(te).epsilon(1e-12));
    CHECK(check.gap <= 1e-9);

    // serial reference gives identical results
    const ElicitabilityCheck serial = verify_elicitability_serial(spec, dist, box);
    CHECK(serial.argmin.var == check.argmin.var);
    CHECK(serial.argmin.es == check.argmin.es);
    CHECK(serial.min_expected_score == check.min_expected_score);
}

TEST_CASE("verify_elicitability: argmin shifts with the location when the grid does") {
    const ScoringSpec spec(RiskLevel(0.1), GChoice::Identity, GChoice::BoundedLogistic);
    const auto base = DistributionSpec::normal(0.0, 1.0);
    const double tv = var_of(base, RiskLevel(0.1));
    const double te = es_of(base, RiskLevel(0.1));
    const GridSearchBox box{tv - 0.4, tv + 0.4, te - 0.4, te + 0.4, 0.02};
    const ElicitabilityCheck c0 = verify_elicitability(spec, base, box);

    const double mu = 0.8;
    const auto shifted = DistributionSpec::normal(mu, 1.0);
    const GridSearchBox shifted_box{box.var_lo + mu, box.var_hi + mu, box.es_lo + mu,
                                    box.es_hi + mu, box.step};
    const ElicitabilityCheck c1 = verify_elicitability(spec, shifted, shifted_box);
    CHECK(c1.argmin.var - c0.argmin.var == doctest::Approx(mu).epsilon(1e-9));
    CHECK(c1.argmin.es - c0.argmin.es == doctest::Approx(mu).epsilon(1e-9));
}

TEST_CASE("verify_elicitability rejects boxes that miss the truth") {
    const ScoringSpec spec(RiskLevel(0.1), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    CHECK_THROWS_AS(verify_elicitability(spec, dist, GridSearchBox{5.0, 6.0, 5.0, 6.0, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_elicitability(spec, dist, GridSearchBox{-4.0, 0.0, -4.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("strictness at desk scale for the logistic spec on the standard normal") {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    const double tv = var_of(dist, RiskLevel(0.025));
    const double te = es_of(dist, RiskLevel(0.025));
    const double at_truth = expected_score(spec, dist, tv, te);
    // every point of a coarse box at sup-distance >= 0.1 loses strictly
    for (int iv = -5; iv <= 5; ++iv) {
        for (int ie = -5; ie <= 5; ++ie) {
            const double dv = 0.1 * iv;
            const double de = 0.1 * ie;
            if (std::max(std::fabs(dv), std::fabs(de)) < 0.1) continue;
            CHECK(expected_score(spec, dist, tv + dv, te + de) - at_truth > 1e-10);
        }
    }
}
