#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esbacktest/comparative.hpp"
#include "esbacktest/csv.hpp"
#include "esbacktest/report.hpp"
#include "esbacktest/sim.hpp"
#include "esbacktest/traditional.hpp"
#include "esbacktest/version.hpp"

namespace {

using namespace esbacktest;
using nlohmann::json;

struct CompareOptions {
    std::string input;
    double alpha = 0.025;
    std::string g2 = "logistic";
    std::string variance = "iid";
    double level = 0.05;
    std::string format = "text";
};

struct CoverageOptions {
    std::string input;
    std::string test;
    double alpha = -1.0; // resolved per test when unset
    std::int64_t n = -1; // defaults to the row count
    std::string format = "text";
};

struct SimulateOptions {
    std::string scenario = "A";
    std::size_t n = 250;
    std::size_t reps = 10000;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string dump_reps;
};

void emit(const Report& report, const std::string& format) {
    if (format == "machine") {
        std::cout << report_to_json(report).dump(2) << '\n';
    } else {
        std::cout << render_text(report);
    }
}

VarianceEstimator parse_variance(const std::string& s) {
    if (s == "iid") return IidSample{};
    if (s.rfind("nw:", 0) == 0) {
        const std::string lag_str = s.substr(3);
        char* end = nullptr;
        const unsigned long lag = std::strtoul(lag_str.c_str(), &end, 10);
        if (end == lag_str.c_str() || *end != '\0') {
            throw UsageError("--variance: cannot parse lag in '" + s + "'");
        }
        return NeweyWest{static_cast<std::size_t>(lag)};
    }
    throw UsageError("--variance must be 'iid' or 'nw:<lag>'");
}

GChoice parse_g2(const std::string& s) {
    if (s == "logistic") return GChoice::BoundedLogistic;
    if (s == "exponential") return GChoice::Exponential;
    if (s == "zero") return GChoice::Zero;
    throw UsageError("--g2 must be one of logistic, exponential, zero");
}

const std::vector<double>& require_column(const std::optional<std::vector<double>>& col,
                                          const char* name) {
    if (!col) {
        throw UsageError(std::string("input is missing required column '") + name + "'");
    }
    return *col;
}

int run_compare(const CompareOptions& opt) {
    const InputTable table = bind_input_table(read_csv_file(opt.input));
    if (table.rows < 2) {
        throw UsageError("compare needs at least 2 rows");
    }
    const bool zero_g2 = (opt.g2 == "zero");
    const auto& x = require_column(table.x, "x");
    const auto& v = require_column(table.v, "v");
    const auto& v_star = require_column(table.v_star, "v_star");

    std::vector<ForecastRecord> records(table.rows);
    if (zero_g2) {
        for (std::size_t t = 0; t < table.rows; ++t) {
            records[t] = {x[t], v[t], 0.0, v_star[t], 0.0};
        }
    } else {
        const auto& e = require_column(table.e, "e");
        const auto& e_star = require_column(table.e_star, "e_star");
        for (std::size_t t = 0; t < table.rows; ++t) {
            records[t] = {x[t], v[t], e[t], v_star[t], e_star[t]};
        }
    }

    const ScoringSpec spec(RiskLevel(opt.alpha), GChoice::Identity, parse_g2(opt.g2));
    const ComparativeResult result =
        comparative_backtest(spec, records, parse_variance(opt.variance), opt.level);

    Report report{"compare", kVersion,
                  json{{"input", opt.input},
                       {"alpha", opt.alpha},
                       {"g2", opt.g2},
                       {"variance", opt.variance},
                       {"level", opt.level}},
                  result};
    emit(report, opt.format);
    return 0;
}

int run_coverage(const CoverageOptions& opt) {
    const InputTable table = bind_input_table(read_csv_file(opt.input));
    const std::size_t n =
        opt.n >= 0 ? static_cast<std::size_t>(opt.n) : table.rows;

    CoverageResult result{};
    double alpha = opt.alpha;
    if (opt.test == "traffic") {
        if (alpha < 0.0) alpha = 0.01;
        if (table.rows != n) {
            throw UsageError("traffic-light test needs exactly n rows (n=" + std::to_string(n) +
                             ", rows=" + std::to_string(table.rows) + ")");
        }
        const auto& x = require_column(table.x, "x");
        const auto& v = require_column(table.v, "v");
        std::vector<VarObservation> records(table.rows);
        for (std::size_t t = 0; t < table.rows; ++t) records[t] = {v[t], x[t]};
        result = traffic_light_var(TrafficLightConfig{RiskLevel(alpha), n}, records);
    } else if (opt.test == "es") {
        if (alpha < 0.0) alpha = 0.025;
        const auto& pits = require_column(table.pit, "pit");
        if (pits.size() != n) {
            throw UsageError("es test needs exactly n PIT rows (n=" + std::to_string(n) +
                             ", rows=" + std::to_string(pits.size()) + ")");
        }
        result = es_coverage_test(RiskLevel(alpha), pits, n);
    } else {
        throw UsageError("--test must be 'traffic' or 'es'");
    }

    Report report{"coverage", kVersion,
                  json{{"input", opt.input},
                       {"test", opt.test},
                       {"alpha", alpha},
                       {"n", n}},
                  result};
    emit(report, opt.format);
    return 0;
}

int run_simulate(const SimulateOptions& opt) {
    if (opt.scenario != "A" && opt.scenario != "B") {
        throw UsageError("--scenario must be 'A' or 'B'");
    }
    ScenarioConfig cfg;
    cfg.scenario = (opt.scenario == "A") ? Scenario::A : Scenario::B;
    cfg.n = opt.n;
    cfg.reps = opt.reps;
    cfg.seed = opt.seed;

    const std::vector<ReplicationOutcome> outcomes = run_replications(cfg);
    const ZoneSummary summary = summarize(outcomes);

    if (!opt.dump_reps.empty()) {
        std::ofstream out(opt.dump_reps);
        if (!out) {
            throw UsageError("cannot open dump file: " + opt.dump_reps);
        }
        std::vector<std::vector<std::string>> rows;
        rows.reserve(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto& o = outcomes[i];
            rows.push_back({std::to_string(i), to_string(o.traffic_light),
                            to_string(o.es_coverage), to_string(o.comparative_var),
                            to_string(o.comparative_joint), format_double(o.exceedances),
                            format_double(o.es_z), format_double(o.t2_var),
                            format_double(o.t2_joint)});
        }
        write_csv(out,
                  {"rep", "traffic_light_zone", "es_coverage_zone", "comparative_var_zone",
                   "comparative_joint_zone", "exceedances", "es_z", "t2_var", "t2_joint"},
                  rows);
    }

    Report report{"simulate", kVersion,
                  json{{"scenario", opt.scenario},
                       {"n", opt.n},
                       {"reps", opt.reps},
                       {"seed", opt.seed}},
                  summary};
    emit(report, opt.format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation and comparison of VaR/ES forecasts"};
    app.require_subcommand(1);

    CompareOptions cmp;
    auto* compare = app.add_subcommand(
        "compare", "Diebold-Mariano comparative backtest of two forecast procedures");
    compare->add_option("input", cmp.input, "CSV with columns x,v,v_star (and e,e_star unless --g2 zero)")
        ->required();
    compare->add_option("--alpha", cmp.alpha, "risk level alpha");
    compare->add_option("--g2", cmp.g2, "G2 choice: logistic|exponential|zero");
    compare->add_option("--variance", cmp.variance, "sigma_N estimator: iid|nw:<lag>");
    compare->add_option("--level", cmp.level, "test level eta");
    compare->add_option("--format", cmp.format, "text|machine");

    CoverageOptions cov;
    auto* coverage =
        app.add_subcommand("coverage", "Traditional coverage backtests (traffic light, ES)");
    coverage->add_option("input", cov.input, "CSV with columns x,v (traffic) or pit (es)")
        ->required();
    coverage->add_option("--test", cov.test, "traffic|es")->required();
    coverage->add_option("--alpha", cov.alpha, "risk level (default 0.01 traffic, 0.025 es)");
    coverage->add_option("--n", cov.n, "window length (default: row count)");
    coverage->add_option("--format", cov.format, "text|machine");

    SimulateOptions sim;
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo study over scenarios A and B");
    simulate->add_option("--scenario", sim.scenario, "A|B");
    simulate->add_option("--n", sim.n, "periods per replication");
    simulate->add_option("--reps", sim.reps, "number of replications");
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--format", sim.format, "text|machine");
    simulate->add_option("--dump-reps", sim.dump_reps, "write per-replication zones to CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compare->parsed()) return run_compare(cmp);
        if (coverage->parsed()) return run_coverage(cov);
        if (simulate->parsed()) return run_simulate(sim);
    } catch (const DegenerateSeriesError& ex) {
        std::cerr << "degenerate statistic: " << ex.what() << '\n';
        return 3;
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
