#include "igeo/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace igeo::report {

std::string format_shortest(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("format_shortest: conversion failed");
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& row) {
    if (row.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format_shortest(row[i]);
    }
    buffer_ += '\n';
    ++rows_;
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& row) {
    if (row.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += row[i];
    }
    buffer_ += '\n';
    ++rows_;
}

nlohmann::json make_envelope(const std::string& command, const nlohmann::json& config_echo,
                             nlohmann::json payload) {
    nlohmann::json env;
    env["schema_version"] = kSchemaVersion;
    env["command"] = command;
    env["config"] = config_echo;
    env["payload"] = std::move(payload);
    env["provenance"] = {{"version", kVersion},
                         {"tolerances", config_echo.contains("tolerances")
                                            ? config_echo["tolerances"]
                                            : nlohmann::json::object()}};
    return env;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << contents;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace igeo::report
