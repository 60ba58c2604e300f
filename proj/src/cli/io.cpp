#include "wvamp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wvamp/errors.hpp"

namespace wvamp::io {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::string normalized = line;
    for (char& ch : normalized) {
        if (ch == ',' || ch == '\t') ch = ' ';
    }
    std::istringstream ss(normalized);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = first + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw InvalidArgument("not a number: '" + tok + "'");
    return v;
}

}  // namespace

std::string ColumnarData::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return {};
}

const std::vector<double>& ColumnarData::column(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return columns[j];
    }
    throw InvalidArgument("no column named '" + name + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_short(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_columnar(std::ostream& out, const ColumnarData& data, Delimiter delim) {
    if (data.names.size() != data.columns.size()) {
        throw InvalidArgument("write_columnar: names and columns differ in count");
    }
    for (const auto& [k, v] : data.metadata) out << "# " << k << '=' << v << '\n';
    out << "# columns=";
    for (std::size_t j = 0; j < data.names.size(); ++j) out << (j ? " " : "") << data.names[j];
    out << '\n';
    const char sep = delim == Delimiter::comma ? ',' : ' ';
    const std::size_t rows = data.rows();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < data.columns.size(); ++j) {
            if (j) out << sep;
            out << format_double(data.columns[j][i]);
        }
        out << '\n';
    }
}

ColumnarData read_columnar(std::istream& in) {
    ColumnarData data;
    for (std::string line; std::getline(in, line);) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            const std::string body = trim(t.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            if (key == "columns") {
                data.names = split_fields(value);
                data.columns.assign(data.names.size(), {});
            } else {
                data.metadata.emplace_back(key, value);
            }
            continue;
        }
        const auto fields = split_fields(t);
        if (data.names.empty()) {
            data.names.resize(fields.size());
            for (std::size_t j = 0; j < fields.size(); ++j) data.names[j] = "c" + std::to_string(j);
            data.columns.assign(fields.size(), {});
        }
        if (fields.size() != data.columns.size()) {
            throw InvalidArgument("row has " + std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(data.columns.size()));
        }
        for (std::size_t j = 0; j < fields.size(); ++j) data.columns[j].push_back(parse_double(fields[j]));
    }
    return data;
}

ColumnarData read_columnar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_columnar(in);
}

MeterState read_density_file(const std::filesystem::path& path) {
    const auto data = read_columnar(path);
    if (data.columns.size() != 2) throw InvalidArgument("density file must have two columns (p, P)");
    const auto& p = data.columns[0];
    const auto& d = data.columns[1];
    if (p.size() < 3) throw InvalidArgument("density file needs at least 3 rows");

    const MomentumGrid grid(p.front(), p.back(), p.size());
    // Relative tolerance on each abscissa against the uniform grid.
    const double tol = 1e-9 * std::max(std::abs(grid.min()), std::abs(grid.max()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::abs(p[i] - grid[i]) > tol) {
            throw InvalidArgument("density file momenta are not uniformly spaced (row " +
                                  std::to_string(i) + ")");
        }
    }
    return MeterState::diagonal_mixed(grid, normalize_density(grid, d));
}

}  // namespace wvamp::io
