#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "oracles.hpp"
#include "wvamp/cli.hpp"
#include "wvamp/io.hpp"

namespace fs = std::filesystem;
using wvamp::cli::run;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("wvamp_test_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

wvamp::io::ColumnarData parse(const std::string& text) {
    std::istringstream ss(text);
    return wvamp::io::read_columnar(ss);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string without_wall_time(const std::string& report) {
    auto j = nlohmann::ordered_json::parse(report);
    j.erase("wall_time_s");
    return j.dump();
}

}  // namespace

TEST(CliDistribution, FigureAmplitude) {
    const auto r = invoke({"distribution", "--theta", "2e-4", "--g", "1e-4", "--chi", "1.5707963267948966", "--sigma", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto d = parse(r.out);
    EXPECT_NEAR(max_abs(d.column("general")), 1.1e-4, 0.1 * 1.1e-4);
    EXPECT_EQ(d.rows(), 4001u);
    EXPECT_EQ(d.meta("tool"), "wvamp");
    EXPECT_FALSE(d.meta("version").empty());
    EXPECT_EQ(std::stod(d.meta("theta")), 2e-4);
}

TEST(CliDistribution, NoSignalCase) {
    const auto r = invoke({"distribution", "--theta", "0", "--g", "0", "--grid", "-8:8:801"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto d = parse(r.out);
    ASSERT_EQ(d.rows(), 801u);
    const auto& p = d.column("p");
    const auto& sum = d.column("sum");
    for (std::size_t i = 0; i < d.rows(); ++i) {
        ASSERT_NEAR(sum[i], static_cast<double>(oracle::normal_pdf(p[i], 1.0)), 4e-16);
    }
    EXPECT_LE(max_abs(d.column("difference")), 2e-16);  // default chi = pi/2 rounds
}

TEST(CliDistribution, SumColumnReintegrates) {
    const auto path = scratch_dir() / "dist.csv";
    const auto r = invoke({"distribution", "--theta", "0.3", "--g", "0.05", "--chi", "0.2", "--format", "csv", "--out", path.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto d = wvamp::io::read_columnar(path);
    const auto& p = d.column("p");
    const wvamp::MomentumGrid grid(p.front(), p.back(), p.size());
    EXPECT_NEAR(wvamp::integrate(grid, d.column("sum")), 1.0, 1e-8);
    EXPECT_NEAR(wvamp::integrate(grid, d.column("plus")) + wvamp::integrate(grid, d.column("minus")), 1.0, 1e-8);
}

TEST(CliDistribution, UnwritablePathFails) {
    const auto r = invoke({"distribution", "--out", "/nonexistent-dir/x/out.dat"});
    EXPECT_EQ(r.status, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliDistribution, DensityFileInput) {
    const auto path = scratch_dir() / "bimodal.txt";
    {
        std::ofstream f(path);
        for (int i = 0; i <= 1200; ++i) {
            const double p = -12.0 + 0.02 * i;
            f << wvamp::io::format_double(p) << ' '
              << wvamp::io::format_double(static_cast<double>(0.5 * oracle::normal_pdf(p - 2, 1) + 0.5 * oracle::normal_pdf(p + 2, 1)))
              << '\n';
        }
    }
    const auto r = invoke({"distribution", "--density-file", path.string(), "--theta", "2e-4"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto d = parse(r.out);
    EXPECT_EQ(d.rows(), 1201u);
    EXPECT_EQ(d.meta("meter"), "density-file");
    // conflicting meter flags are a usage error
    EXPECT_EQ(invoke({"distribution", "--density-file", path.string(), "--sigma", "1"}).status, 2);
}

TEST(CliFigure1, PanelPeaksAndMirrors) {
    const auto dir = scratch_dir() / "fig";
    const auto r = invoke({"figure1", "--out", dir.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    for (char panel : {'a', 'b', 'c', 'd'}) {
        EXPECT_TRUE(fs::exists(dir / (std::string("panel_") + panel + ".dat"))) << panel;
    }
    const auto a = wvamp::io::read_columnar(dir / "panel_a.dat");
    const auto d = wvamp::io::read_columnar(dir / "panel_d.dat");
    EXPECT_NEAR(max_abs(a.column("general_pos")), 1.1e-4, 0.1 * 1.1e-4);
    EXPECT_NEAR(max_abs(d.column("general_pos")), 2.0e-8, 0.1 * 2.0e-8);
    EXPECT_EQ(max_abs(a.column("general_zero")) > 0.0, true);

    // theta -> -theta, p -> -p: odd at chi = pi/2, even at chi = 0
    const std::size_t n = a.rows();
    const auto& ap = a.column("general_pos");
    const auto& an = a.column("general_neg");
    const auto& dp = d.column("general_pos");
    const auto& dn = d.column("general_neg");
    for (std::size_t i = 0; i < n; ++i) {
        ASSERT_NEAR(an[n - 1 - i], -ap[i], 1e-18);
        ASSERT_NEAR(dn[n - 1 - i], dp[i], 1e-20);
    }
    EXPECT_NE(r.out.find("panel a"), std::string::npos);
}

TEST(CliEstimate, RecoversPhaseAtMillionShots) {
    const auto r = invoke({"estimate", "--shots", "1000000", "--theta", "2e-4", "--g", "1e-4", "--chi",
                           "1.5707963267948966", "--seed", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["converged"].get<bool>());
    const double theta_hat = j["theta_hat"], se = j["stderr"];
    EXPECT_LE(std::abs(theta_hat - 2e-4), 4 * se);
    EXPECT_EQ(j["n_shots"].get<std::size_t>(), 1000000u);
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 1u);
    EXPECT_EQ(j["rng"].get<std::string>(), "mt19937_64+u53/v1");
    EXPECT_TRUE(j.contains("fisher_information"));
    EXPECT_TRUE(j.contains("wall_time_s"));
    EXPECT_EQ(j["theta_true"].get<double>(), 2e-4);
}

TEST(CliEstimate, DeterministicApartFromWallTime) {
    const std::vector<std::string> args = {"estimate", "--shots", "20000", "--theta", "0.01", "--g", "1e-2", "--seed", "77"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(without_wall_time(a.out), without_wall_time(b.out));
}

TEST(CliEstimate, TextFormat) {
    const auto r = invoke({"estimate", "--shots", "5000", "--theta", "0.1", "--g", "0.05", "--format", "text", "--window", "-0.6:0.7"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("theta_hat="), std::string::npos);
    EXPECT_NE(r.out.find("converged=true"), std::string::npos);
}

TEST(CliEstimate, EdgeWindowIsNonConvergedFailure) {
    const auto r = invoke({"estimate", "--shots", "5000", "--theta", "0", "--window", "0.5:0.6"});
    EXPECT_EQ(r.status, 1);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["converged"].get<bool>());
}

TEST(CliEstimate, UsageErrors) {
    EXPECT_EQ(invoke({"estimate", "--shots", "0"}).status, 2);
    EXPECT_EQ(invoke({"estimate", "--window", "1:0"}).status, 2);
    EXPECT_EQ(invoke({"estimate", "--sigma", "-1"}).status, 2);
    EXPECT_EQ(invoke({}).status, 2);
    EXPECT_EQ(invoke({"bogus"}).status, 2);
    EXPECT_EQ(invoke({"distribution", "--grid", "1:0:5"}).status, 2);
    // grid narrower than 6 sigma
    EXPECT_EQ(invoke({"distribution", "--grid", "-3:3:101"}).status, 2);
}

TEST(CliSweepChi, PeakGrowsWithChi) {
    const auto r = invoke({"sweep-chi", "--theta", "2e-4", "--chi-points", "11"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto d = parse(r.out);
    ASSERT_EQ(d.rows(), 11u);
    const auto& peak = d.column("peak_abs");
    EXPECT_NEAR(peak.front(), 2.0e-8, 0.1 * 2.0e-8);
    EXPECT_NEAR(peak.back(), 1.1e-4, 0.1 * 1.1e-4);
    for (std::size_t i = 1; i < peak.size(); ++i) EXPECT_GT(peak[i], peak[i - 1]);
    EXPECT_NEAR(d.column("chi").back(), oracle::pi / 2, 1e-15);
}

TEST(Cli, VersionAndHelp) {
    EXPECT_EQ(invoke({"--version"}).status, 0);
    const auto h = invoke({"--help"});
    EXPECT_EQ(h.status, 0);
    EXPECT_NE(h.out.find("figure1"), std::string::npos);
}
