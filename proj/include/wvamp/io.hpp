#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wvamp/meter.hpp"

namespace wvamp::io {

// Columnar text: '#'-prefixed key=value metadata lines, one of which is
// columns=<names...>, then one row per sample. Data values are written with 17
// significant digits so a 64-bit double round-trips exactly.
enum class Delimiter { whitespace, comma };

struct ColumnarData {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[j][row]

    // Empty string when absent.
    std::string meta(const std::string& key) const;
    // Throws InvalidArgument when absent.
    const std::vector<double>& column(const std::string& name) const;
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

std::string format_double(double v);
// Shortest text that parses back to the same double (metadata and summaries).
std::string format_short(double v);

void write_columnar(std::ostream& out, const ColumnarData& data,
                    Delimiter delim = Delimiter::whitespace);
// Accepts either delimiter. Throws InvalidArgument on malformed input.
ColumnarData read_columnar(std::istream& in);
ColumnarData read_columnar(const std::filesystem::path& path);

// Two-column file (p, P_i(p)) on a uniform grid, '#' comments allowed. The density is
// rescaled to unit trapezoid integral. Throws InvalidArgument for non-uniform
// spacing, fewer than 3 rows, or negative samples; std::runtime_error if unreadable.
MeterState read_density_file(const std::filesystem::path& path);

}  // namespace wvamp::io
