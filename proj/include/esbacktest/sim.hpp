#pragma once

#include <cstdint>
#include <vector>

#include "esbacktest/comparative.hpp"
#include "esbacktest/measures.hpp"

namespace esbacktest {

/// Scenario A: internal forecaster uses the conditional model N(mu_t, 1),
/// the standard procedure the unconditional N(0, 2). Scenario B swaps the
/// roles. The data-generating process is the same in both.
enum class Scenario { A, B };

struct ScenarioConfig {
    Scenario scenario = Scenario::A;
    std::size_t n = 250;      // periods per replication
    std::size_t reps = 10000; // replications
    std::uint64_t seed = 1;
    double eta = 0.05;                          // comparative test level
    RiskLevel var_level = RiskLevel(0.01);      // traffic light + comparative VaR
    RiskLevel joint_level = RiskLevel(0.025);   // joint (VaR, ES) tests
};

/// Zone decisions (and audit statistics) of the four backtests run on one
/// replication's data.
struct ReplicationOutcome {
    Zone traffic_light;
    Zone es_coverage;
    Zone comparative_var;
    Zone comparative_joint;
    double exceedances; // traffic-light statistic k
    double es_z;        // ES coverage Z
    double t2_var;      // comparative VaR t2
    double t2_joint;    // comparative joint t2

    bool operator==(const ReplicationOutcome&) const = default;
};

struct ZoneSummary {
    struct Row {
        double green_pct;
        double yellow_pct;
        double red_pct;

        bool operator==(const Row&) const = default;
    };
    Row traffic_light;
    Row es_coverage;
    Row comparative_var;
    Row comparative_joint;
    std::size_t reps;

    bool operator==(const ZoneSummary&) const = default;
};

/// One replication, fully determined by (cfg.seed, rep_index).
ReplicationOutcome run_replication(const ScenarioConfig& cfg, std::uint64_t rep_index);

/// All replication outcomes in rep order; parallel over replications.
std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg);

ZoneSummary summarize(const std::vector<ReplicationOutcome>& outcomes);

/// Whole experiment; bit-identical for a given cfg regardless of thread count.
ZoneSummary run_experiment(const ScenarioConfig& cfg);

/// Single-threaded reference with identical results.
ZoneSummary run_experiment_serial(const ScenarioConfig& cfg);

} // namespace esbacktest
