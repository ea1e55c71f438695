#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "esbacktest/comparative.hpp"
#include "esbacktest/sim.hpp"
#include "esbacktest/traditional.hpp"

namespace esbacktest {

/// Structured result of one CLI run plus metadata. Serializes losslessly
/// to JSON (the machine format) and back.
struct Report {
    std::string command;
    std::string version;
    nlohmann::json config;
    std::variant<ComparativeResult, CoverageResult, ZoneSummary> result;
};

Zone zone_from_string(std::string_view s);

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Human-readable rendering; percentages shown to two decimals.
std::string render_text(const Report& report);

} // namespace esbacktest
