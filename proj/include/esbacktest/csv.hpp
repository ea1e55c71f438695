#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esbacktest {

/// Bad input the caller can fix: missing file, missing column, malformed
/// cell, row-count mismatch. The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// RFC-4180-style CSV: header row required, quoted fields may contain
/// commas, quotes (doubled) and newlines; CRLF accepted.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest 17-significant-digit form; round-trips doubles exactly.
std::string format_double(double value);

std::optional<std::size_t> find_column(const CsvTable& table, std::string_view name);

/// Parse a cell as a finite real; throws UsageError otherwise.
double parse_finite(const std::string& cell, std::string_view column, std::size_t row);

/// Known columns of an input file, bound by header name; unknown columns
/// are ignored. Every bound cell must parse as a finite real.
struct InputTable {
    std::size_t rows = 0;
    std::optional<std::vector<double>> x;
    std::optional<std::vector<double>> v;
    std::optional<std::vector<double>> e;
    std::optional<std::vector<double>> v_star;
    std::optional<std::vector<double>> e_star;
    std::optional<std::vector<double>> pit;
};

InputTable bind_input_table(const CsvTable& table);

} // namespace esbacktest
