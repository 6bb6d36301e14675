#include "pmimo/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pmimo {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    if (res.ec != std::errc{}) throw std::runtime_error("failed to format double");
    return std::string(buf, res.ptr);
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
    if (table.columns.empty()) throw std::invalid_argument("table needs at least one column");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("row width does not match the header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

ResultTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    ResultTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            const auto colon = body.find(": ");
            if (colon == std::string::npos) {
                throw std::runtime_error(path.string() + ": malformed metadata line");
            }
            table.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            table.columns = std::move(cells);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc{} || res.ptr != c.data() + c.size()) {
                throw std::runtime_error(path.string() + ": bad numeric cell '" + c + "'");
            }
            row.push_back(v);
        }
        if (row.size() != table.columns.size()) {
            throw std::runtime_error(path.string() + ": ragged row");
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error(path.string() + ": missing header row");
    return table;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string to_hex(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

}  // namespace pmimo
