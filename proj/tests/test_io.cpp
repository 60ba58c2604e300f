#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "wvamp/errors.hpp"
#include "wvamp/io.hpp"

using namespace wvamp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wvamp_test_io_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min(),
                     std::nextafter(1.0, 2.0)}) {
        EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(FormatShort, ShortestRoundTrip) {
    EXPECT_EQ(io::format_short(2e-4), "2e-04");
    EXPECT_EQ(io::format_double(2e-4), "0.00020000000000000001");
    for (double v : {1.0 / 3.0, -1e-300, 1.5707963267948966}) {
        EXPECT_EQ(std::strtod(io::format_short(v).c_str(), nullptr), v);
    }
}

TEST(Columnar, WriteThenRead) {
    io::ColumnarData d;
    d.metadata = {{"tool", "wvamp"}, {"g", "0.0001"}};
    d.names = {"p", "value"};
    d.columns = {{-1.0, 0.0, 1.0}, {0.1, 1.0 / 3.0, -7e-20}};
    for (auto delim : {io::Delimiter::whitespace, io::Delimiter::comma}) {
        std::stringstream ss;
        io::write_columnar(ss, d, delim);
        const auto back = io::read_columnar(ss);
        EXPECT_EQ(back.names, d.names);
        EXPECT_EQ(back.columns, d.columns);
        EXPECT_EQ(back.meta("g"), "0.0001");
        EXPECT_EQ(back.meta("missing"), "");
    }
}

TEST(Columnar, HeaderLayout) {
    io::ColumnarData d;
    d.metadata = {{"k", "v"}};
    d.names = {"a", "b"};
    d.columns = {{1.0}, {2.0}};
    std::stringstream ss;
    io::write_columnar(ss, d, io::Delimiter::comma);
    EXPECT_EQ(ss.str(), "# k=v\n# columns=a b\n1,2\n");
}

TEST(Columnar, MalformedRowsRejected) {
    std::stringstream ragged("# columns=a b\n1 2\n3\n");
    EXPECT_THROW(io::read_columnar(ragged), InvalidArgument);
    std::stringstream junk("1 x\n");
    EXPECT_THROW(io::read_columnar(junk), InvalidArgument);
    io::ColumnarData d;
    d.names = {"a"};
    EXPECT_THROW(d.column("b"), InvalidArgument);
}

TEST(DensityFile, LoadsAndNormalizes) {
    const auto path = scratch("density.txt");
    {
        std::ofstream f(path);
        f << "# bimodal\n";
        for (int i = 0; i <= 800; ++i) {
            const double p = -8.0 + 0.02 * i;
            f << io::format_double(p) << ' '
              << io::format_double(2.0 * (0.5 * oracle::normal_pdf(p - 1.0, 1.0) + 0.5 * oracle::normal_pdf(p + 1.0, 1.0)))
              << '\n';
        }
    }
    const auto meter = io::read_density_file(path);
    EXPECT_FALSE(meter.is_pure());
    EXPECT_EQ(meter.grid().size(), 801u);
    EXPECT_NEAR(integrate(meter.grid(), meter.momentum_density()), 1.0, 1e-14);
}

TEST(DensityFile, RejectsBadInput) {
    const auto uneven = scratch("uneven.txt");
    {
        std::ofstream f(uneven);
        f << "0 1\n0.1 1\n0.3 1\n0.4 1\n";
    }
    EXPECT_THROW(io::read_density_file(uneven), InvalidArgument);
    const auto negative = scratch("negative.txt");
    {
        std::ofstream f(negative);
        f << "0 1\n1 -1\n2 1\n";
    }
    EXPECT_THROW(io::read_density_file(negative), InvalidArgument);
    const auto three = scratch("three.txt");
    {
        std::ofstream f(three);
        f << "0 1 2\n1 1 2\n2 1 2\n";
    }
    EXPECT_THROW(io::read_density_file(three), InvalidArgument);
    EXPECT_THROW(io::read_density_file(scratch("absent.txt")), std::runtime_error);
}
