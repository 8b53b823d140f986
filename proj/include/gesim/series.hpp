#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gesim {

// Named time/parameter series destined for CSV. Values are printed with 15
// significant digits, '.' decimal point, LF endings, so byte-identical inputs
// give byte-identical files.
struct SeriesTable {
    std::vector<std::string> comments;  // emitted as leading '# ' lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    std::string to_csv() const;
    void write_csv(const std::string& path) const;
};

std::string format_value(double v);  // %.15g

std::uint64_t fnv1a64(const std::string& data);
std::string hash_hex(const std::string& data);

}  // namespace gesim
