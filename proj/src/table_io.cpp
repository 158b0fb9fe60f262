#include "wincs/table_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace wincs {

std::string format_number(double value) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

bool needs_quoting(const std::string& cell) {
    return cell.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_escape(const std::string& cell) {
    if (!needs_quoting(cell)) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

bool parse_double(const std::string& cell, double& value) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last;
}

}  // namespace

void write_csv(std::ostream& out, const Table& table, const ConfigEcho& config) {
    for (const auto& [key, value] : config) out << "# " << key << "=" << value << "\r\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << "\r\n";
    }
}

void write_json(std::ostream& out, const Table& table, const ConfigEcho& config,
                std::uint64_t seed) {
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config) doc["config"][key] = value;
    doc["seed"] = seed;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            double value;
            if (parse_double(row[i], value))
                obj[table.columns[i]] = value;
            else
                obj[table.columns[i]] = row[i];
        }
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << "\n";
}

void write_table_file(const std::string& path, const std::string& format, const Table& table,
                      const ConfigEcho& config, std::uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    if (format == "csv")
        write_csv(out, table, config);
    else if (format == "json")
        write_json(out, table, config, seed);
    else
        throw std::invalid_argument("unknown output format: " + format);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace wincs
