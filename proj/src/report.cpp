#include "esbacktest/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace esbacktest {

namespace {

using nlohmann::json;

json zone_summary_row_to_json(const ZoneSummary::Row& row) {
    return json{{"green_pct", row.green_pct},
                {"yellow_pct", row.yellow_pct},
                {"red_pct", row.red_pct}};
}

ZoneSummary::Row zone_summary_row_from_json(const json& j) {
    return ZoneSummary::Row{j.at("green_pct").get<double>(), j.at("yellow_pct").get<double>(),
                            j.at("red_pct").get<double>()};
}

std::string fixed2(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::string general(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

} // namespace

Zone zone_from_string(std::string_view s) {
    if (s == "green") return Zone::Green;
    if (s == "yellow") return Zone::Yellow;
    if (s == "red") return Zone::Red;
    throw std::invalid_argument("unknown zone: " + std::string(s));
}

nlohmann::json report_to_json(const Report& report) {
    json result;
    if (const auto* cmp = std::get_if<ComparativeResult>(&report.result)) {
        result = json{{"type", "comparative"},
                      {"t2", cmp->t2},
                      {"sigma_n", cmp->sigma_n},
                      {"p_superior", cmp->p_superior},
                      {"p_inferior", cmp->p_inferior},
                      {"zone", to_string(cmp->zone)},
                      {"n", cmp->n},
                      {"mean_score_internal", cmp->mean_score_internal},
                      {"mean_score_standard", cmp->mean_score_standard}};
    } else if (const auto* cov = std::get_if<CoverageResult>(&report.result)) {
        result = json{{"type", "coverage"},
                      {"statistic", cov->statistic},
                      {"zone", to_string(cov->zone)},
                      {"p_value", cov->p_value}};
    } else {
        const auto& zs = std::get<ZoneSummary>(report.result);
        result = json{{"type", "zone_summary"},
                      {"reps", zs.reps},
                      {"traffic_light", zone_summary_row_to_json(zs.traffic_light)},
                      {"es_coverage", zone_summary_row_to_json(zs.es_coverage)},
                      {"comparative_var", zone_summary_row_to_json(zs.comparative_var)},
                      {"comparative_joint", zone_summary_row_to_json(zs.comparative_joint)}};
    }
    return json{{"command", report.command},
                {"version", report.version},
                {"config", report.config},
                {"result", result}};
}

Report report_from_json(const nlohmann::json& j) {
    Report report;
    report.command = j.at("command").get<std::string>();
    report.version = j.at("version").get<std::string>();
    report.config = j.at("config");
    const json& result = j.at("result");
    const auto type = result.at("type").get<std::string>();
    if (type == "comparative") {
        report.result = ComparativeResult{
            result.at("t2").get<double>(),
            result.at("sigma_n").get<double>(),
            result.at("p_superior").get<double>(),
            result.at("p_inferior").get<double>(),
            zone_from_string(result.at("zone").get<std::string>()),
            result.at("n").get<std::size_t>(),
            result.at("mean_score_internal").get<double>(),
            result.at("mean_score_standard").get<double>()};
    } else if (type == "coverage") {
        report.result = CoverageResult{result.at("statistic").get<double>(),
                                       zone_from_string(result.at("zone").get<std::string>()),
                                       result.at("p_value").get<double>()};
    } else if (type == "zone_summary") {
        report.result = ZoneSummary{zone_summary_row_from_json(result.at("traffic_light")),
                                    zone_summary_row_from_json(result.at("es_coverage")),
                                    zone_summary_row_from_json(result.at("comparative_var")),
                                    zone_summary_row_from_json(result.at("comparative_joint")),
                                    result.at("reps").get<std::size_t>()};
    } else {
        throw std::invalid_argument("unknown result type: " + type);
    }
    return report;
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    if (const auto* cmp = std::get_if<ComparativeResult>(&report.result)) {
        out << "comparative backtest (n=" << cmp->n << ")\n";
        out << "  mean score internal   " << general(cmp->mean_score_internal) << '\n';
        out << "  mean score standard   " << general(cmp->mean_score_standard) << '\n';
        out << "  t2                    " << general(cmp->t2) << '\n';
        out << "  sigma_n               " << general(cmp->sigma_n) << '\n';
        out << "  p-value H0- (at least as good)  " << general(cmp->p_superior) << '\n';
        out << "  p-value H0+ (at most as good)   " << general(cmp->p_inferior) << '\n';
        out << "  zone                  " << to_string(cmp->zone) << '\n';
    } else if (const auto* cov = std::get_if<CoverageResult>(&report.result)) {
        out << "coverage backtest\n";
        out << "  statistic   " << general(cov->statistic) << '\n';
        out << "  p-value     " << general(cov->p_value) << '\n';
        out << "  zone        " << to_string(cov->zone) << '\n';
    } else {
        const auto& zs = std::get<ZoneSummary>(report.result);
        const auto line = [&](const char* name, const ZoneSummary::Row& row) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "  %-28s %7s %8s %8s\n", name,
                          fixed2(row.green_pct).c_str(), fixed2(row.yellow_pct).c_str(),
                          fixed2(row.red_pct).c_str());
            out << buf;
        };
        out << "zone percentages (" << zs.reps << " replications)\n";
        char head[96];
        std::snprintf(head, sizeof head, "  %-28s %7s %8s %8s\n", "", "green", "yellow", "red");
        out << head;
        line("traditional VaR", zs.traffic_light);
        line("traditional ES", zs.es_coverage);
        line("comparative VaR", zs.comparative_var);
        line("comparative (VaR, ES)", zs.comparative_joint);
    }
    return out.str();
}

} // namespace esbacktest
