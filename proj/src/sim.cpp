#include "esbacktest/sim.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "esbacktest/normal_dist.hpp"
#include "esbacktest/rng.hpp"
#include "esbacktest/traditional.hpp"

namespace esbacktest {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872421;

void validate(const ScenarioConfig& cfg) {
    if (cfg.n < 2) {
        throw std::invalid_argument("ScenarioConfig: n must be >= 2");
    }
    if (cfg.reps < 1) {
        throw std::invalid_argument("ScenarioConfig: reps must be >= 1");
    }
}

std::size_t zone_index(Zone z) { return static_cast<std::size_t>(z); }

using Counts = std::array<std::array<long long, 3>, 4>;

void count_outcome(Counts& counts, const ReplicationOutcome& o) {
    ++counts[0][zone_index(o.traffic_light)];
    ++counts[1][zone_index(o.es_coverage)];
    ++counts[2][zone_index(o.comparative_var)];
    ++counts[3][zone_index(o.comparative_joint)];
}

ZoneSummary summary_from_counts(const Counts& counts, std::size_t reps) {
    const auto row = [&](std::size_t i) {
        const double r = static_cast<double>(reps);
        return ZoneSummary::Row{100.0 * static_cast<double>(counts[i][0]) / r,
                                100.0 * static_cast<double>(counts[i][1]) / r,
                                100.0 * static_cast<double>(counts[i][2]) / r};
    };
    return ZoneSummary{row(0), row(1), row(2), row(3), reps};
}

} // namespace

ReplicationOutcome run_replication(const ScenarioConfig& cfg, std::uint64_t rep_index) {
    validate(cfg);
    const std::size_t n = cfg.n;
    SplitMix64 rng = substream(cfg.seed, rep_index);

    // Unit-normal (VaR, ES) at each level; conditional forecasts follow by
    // location shift, the unconditional ones by the sqrt(2) scale.
    const RiskPair unit_joint = normal_risk_pair(0.0, 1.0, cfg.joint_level);
    const double unit_var = normal_quantile(cfg.var_level.alpha());
    const RiskPair uncond_joint{kSqrt2 * unit_joint.var, kSqrt2 * unit_joint.es};
    const double uncond_var = kSqrt2 * unit_var;

    const bool internal_is_conditional = (cfg.scenario == Scenario::A);

    std::vector<ForecastRecord> joint_records(n);
    std::vector<ForecastRecord> var_records(n);
    std::vector<VarObservation> tl_records(n);
    std::vector<double> pits(n);

    for (std::size_t t = 0; t < n; ++t) {
        const double mu = rng.normal();
        const double x = mu + rng.normal();

        const double cond_v = mu + unit_joint.var;
        const double cond_e = mu + unit_joint.es;
        const double cond_var_v = mu + unit_var;

        if (internal_is_conditional) {
            joint_records[t] = {x, cond_v, cond_e, uncond_joint.var, uncond_joint.es};
            var_records[t] = {x, cond_var_v, 0.0, uncond_var, 0.0};
            tl_records[t] = {cond_var_v, x};
            pits[t] = normal_cdf(x - mu);
        } else {
            joint_records[t] = {x, uncond_joint.var, uncond_joint.es, cond_v, cond_e};
            var_records[t] = {x, uncond_var, 0.0, cond_var_v, 0.0};
            tl_records[t] = {uncond_var, x};
            pits[t] = normal_cdf(x / kSqrt2);
        }
    }

    const ScoringSpec joint_spec(cfg.joint_level, GChoice::Identity, GChoice::BoundedLogistic);
    const VarianceEstimator var_est = IidSample{};

    const ComparativeResult joint_res =
        comparative_backtest(joint_spec, joint_records, var_est, cfg.eta);
    const ComparativeResult var_res =
        comparative_backtest_var(GChoice::Identity, cfg.var_level, var_records, var_est, cfg.eta);

    const TrafficLightConfig tl_cfg{cfg.var_level, n, kBaselGreenCum, kBaselRedCum};
    const CoverageResult tl_res = traffic_light_var(tl_cfg, tl_records);
    const CoverageResult es_res = es_coverage_test(cfg.joint_level, pits, n);

    return ReplicationOutcome{tl_res.zone,     es_res.zone,     var_res.zone,
                              joint_res.zone,  tl_res.statistic, es_res.statistic,
                              var_res.t2,      joint_res.t2};
}

std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg) {
    validate(cfg);
    std::vector<ReplicationOutcome> out(cfg.reps);
    const auto reps = static_cast<std::int64_t>(cfg.reps);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < reps; ++i) {
        out[static_cast<std::size_t>(i)] =
            run_replication(cfg, static_cast<std::uint64_t>(i));
    }
    return out;
}

ZoneSummary summarize(const std::vector<ReplicationOutcome>& outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("summarize: need at least one replication");
    }
    Counts counts{};
    for (const auto& o : outcomes) count_outcome(counts, o);
    return summary_from_counts(counts, outcomes.size());
}

ZoneSummary run_experiment(const ScenarioConfig& cfg) { return summarize(run_replications(cfg)); }

ZoneSummary run_experiment_serial(const ScenarioConfig& cfg) {
    validate(cfg);
    Counts counts{};
    for (std::uint64_t i = 0; i < cfg.reps; ++i) {
        count_outcome(counts, run_replication(cfg, i));
    }
    return summary_from_counts(counts, cfg.reps);
}

} // namespace esbacktest
