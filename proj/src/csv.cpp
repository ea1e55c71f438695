#include "esbacktest/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace esbacktest {

namespace {

// One pass over the whole document so quoted fields may contain newlines.
std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_row = [&] {
        end_field();
        records.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field.empty() && !field_started) {
                in_quotes = true;
                field_started = true;
            } else {
                field += c;
            }
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            break;
        default:
            field += c;
            field_started = true;
            break;
        }
    }
    if (in_quotes) {
        throw UsageError("csv: unterminated quoted field");
    }
    if (field_started || !field.empty() || !row.empty()) {
        end_row();
    }
    return records;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

} // namespace

CsvTable read_csv(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    auto records = parse_records(buf.str());
    if (records.empty()) {
        throw UsageError("csv: missing header row");
    }
    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != table.header.size()) {
            throw UsageError("csv: row " + std::to_string(i) + " has " +
                             std::to_string(records[i].size()) + " fields, header has " +
                             std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[i]));
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open input file: " + path);
    }
    return read_csv(in);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    const auto write_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            if (needs_quoting(row[i])) {
                out << '"';
                for (char c : row[i]) {
                    if (c == '"') out << '"';
                    out << c;
                }
                out << '"';
            } else {
                out << row[i];
            }
        }
        out << '\n';
    };
    write_row(header);
    for (const auto& row : rows) write_row(row);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::optional<std::size_t> find_column(const CsvTable& table, std::string_view name) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == name) return i;
    }
    return std::nullopt;
}

double parse_finite(const std::string& cell, std::string_view column, std::size_t row) {
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !std::isfinite(value)) {
        throw UsageError("column '" + std::string(column) + "', row " + std::to_string(row + 1) +
                         ": cannot parse '" + cell + "' as a finite real");
    }
    return value;
}

InputTable bind_input_table(const CsvTable& table) {
    InputTable out;
    out.rows = table.rows.size();
    const auto bind = [&](std::string_view name) -> std::optional<std::vector<double>> {
        const auto col = find_column(table, name);
        if (!col) return std::nullopt;
        std::vector<double> values(table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            values[r] = parse_finite(table.rows[r][*col], name, r);
        }
        return values;
    };
    out.x = bind("x");
    out.v = bind("v");
    out.e = bind("e");
    out.v_star = bind("v_star");
    out.e_star = bind("e_star");
    out.pit = bind("pit");
    return out;
}

} // namespace esbacktest
