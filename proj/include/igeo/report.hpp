#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace igeo::report {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Shortest decimal representation that round-trips the double exactly.
std::string format_shortest(double value);

/// Minimal CSV writer: one header row, '\n' line endings, shortest-round-trip
/// numeric cells. Deterministic byte-for-byte for identical inputs.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    const std::string& str() const { return buffer_; }
    std::size_t rows() const { return rows_; }

private:
    std::string buffer_;
    std::size_t rows_ = 0;
    std::size_t columns_ = 0;
};

/// Standard report envelope. Wall time is deliberately not part of the
/// payload so identical configs serialize byte-identically.
nlohmann::json make_envelope(const std::string& command, const nlohmann::json& config_echo,
                             nlohmann::json payload);

std::string dump_json(const nlohmann::json& j);

void write_file(const std::string& path, const std::string& contents);

}  // namespace igeo::report
