#include "gesim/series.hpp"

#include <cstdio>
#include <fstream>

#include "gesim/errors.hpp"

namespace gesim {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void SeriesTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw ConfigError("SeriesTable: row width does not match the header");
    rows.push_back(std::move(row));
}

std::string SeriesTable::to_csv() const {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_value(row[i]);
        }
        out += '\n';
    }
    return out;
}

void SeriesTable::write_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << to_csv();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

}  // namespace gesim
