// Numeric result tables and their CSV wire format: '#'-prefixed metadata
// lines, one header row, then rows of shortest-round-trip floats.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmimo {

struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;  // emitted in order
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

void emit_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);

// FNV-1a, 64-bit; used to fingerprint the canonical scenario text.
std::uint64_t fnv1a64(std::string_view text);
std::string to_hex(std::uint64_t value);

}  // namespace pmimo
