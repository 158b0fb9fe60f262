#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wincs {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Cells are pre-formatted so CSV and JSON emissions of one run carry
// identical values.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// 12 significant digits, '.' decimal separator.
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table, const ConfigEcho& config);
void write_json(std::ostream& out, const Table& table, const ConfigEcho& config,
                std::uint64_t seed);

// format is "csv" or "json"; throws IoError with the path in the message on
// failure to write.
void write_table_file(const std::string& path, const std::string& format, const Table& table,
                      const ConfigEcho& config, std::uint64_t seed);

}  // namespace wincs
