#include "wvamp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wvamp/errors.hpp"
#include "wvamp/estimation.hpp"
#include "wvamp/io.hpp"
#include "wvamp/kernels.hpp"
#include "wvamp/meter.hpp"
#include "wvamp/signals.hpp"
#include "wvamp/version.hpp"

namespace wvamp::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct GridSpec {
    double p_min;
    double p_max;
    std::size_t n;
};

// theta, g, chi, meter, grid, estimation and output settings shared by every subcommand.
struct RunConfig {
    double theta = 0.0;
    double g = kFigureCoupling;
    double chi = std::numbers::pi / 2;
    double sigma = kFigureSigma;
    std::string density_file;
    std::optional<GridSpec> grid;
    std::size_t shots = 1'000'000;
    std::uint64_t seed = 1;
    std::string window;
    std::size_t chi_points = 91;
    std::string out = "-";
    std::string format;
};

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw CLI::ValidationError("--grid", "expected p_min:p_max:n");
    try {
        std::size_t used = 0;
        GridSpec g{};
        g.p_min = std::stod(text.substr(0, a));
        g.p_max = std::stod(text.substr(a + 1, b - a - 1));
        const std::string n = text.substr(b + 1);
        const long long v = std::stoll(n, &used);
        if (used != n.size() || v < 3) throw std::invalid_argument("n");
        g.n = static_cast<std::size_t>(v);
        if (!(g.p_min < g.p_max)) throw std::invalid_argument("order");
        return g;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected p_min:p_max:n with p_min < p_max and n >= 3");
    }
}

SearchWindow parse_window(const std::string& text) {
    const auto a = text.find(':');
    try {
        if (a == std::string::npos) throw std::invalid_argument("window");
        SearchWindow w{std::stod(text.substr(0, a)), std::stod(text.substr(a + 1))};
        if (!(w.lo < w.hi)) throw std::invalid_argument("order");
        return w;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected lo:hi with lo < hi");
    }
}

MeterState build_meter(const RunConfig& cfg) {
    if (!cfg.density_file.empty()) return io::read_density_file(cfg.density_file);
    const MomentumGrid grid = cfg.grid ? MomentumGrid(cfg.grid->p_min, cfg.grid->p_max, cfg.grid->n)
                                       : default_grid(cfg.sigma);
    return gaussian_meter(cfg.sigma, grid);
}

std::vector<std::pair<std::string, std::string>> base_metadata(const std::string& command,
                                                               const RunConfig& cfg,
                                                               const MeterState& meter) {
    std::vector<std::pair<std::string, std::string>> md;
    md.emplace_back("tool", std::string(kName));
    md.emplace_back("version", std::string(kVersion));
    md.emplace_back("command", command);
    md.emplace_back("g", io::format_short(cfg.g));
    if (cfg.density_file.empty()) {
        md.emplace_back("meter", "gaussian");
        md.emplace_back("sigma", io::format_short(cfg.sigma));
    } else {
        md.emplace_back("meter", "density-file");
        md.emplace_back("density_file", cfg.density_file);
    }
    const auto& grid = meter.grid();
    md.emplace_back("grid", io::format_short(grid.min()) + ":" + io::format_short(grid.max()) +
                                ":" + std::to_string(grid.size()));
    return md;
}

io::Delimiter delimiter_for(const std::string& format) {
    return format == "csv" ? io::Delimiter::comma : io::Delimiter::whitespace;
}

// Writes to `out` for "-", otherwise to the named file. Throws on I/O failure.
void emit(const std::string& target, std::ostream& out, const std::string& text) {
    if (target == "-") {
        out << text;
        return;
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + target + "' for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("failed writing '" + target + "'");
}

std::string to_text(const io::ColumnarData& data, const std::string& format) {
    std::ostringstream ss;
    io::write_columnar(ss, data, delimiter_for(format));
    return ss.str();
}

int cmd_distribution(const RunConfig& cfg, std::ostream& out) {
    const MeterState meter = build_meter(cfg);
    const auto set = all_signals(cfg.theta, cfg.g, cfg.chi, meter);
    io::ColumnarData data;
    data.metadata = base_metadata("distribution", cfg, meter);
    data.metadata.emplace_back("theta", io::format_short(cfg.theta));
    data.metadata.emplace_back("chi", io::format_short(cfg.chi));
    data.metadata.emplace_back("total_plus", io::format_short(set.plus.total()));
    data.metadata.emplace_back("total_minus", io::format_short(set.minus.total()));
    data.metadata.emplace_back("peak_abs_general", io::format_short(set.general.peak_abs()));
    data.metadata.emplace_back("peak_location_general", io::format_short(set.general.peak_location()));
    data.names = {"p", "plus", "minus", "sum", "difference", "general"};
    const auto pts = meter.grid().points();
    auto col = [](const SignalCurve& c) { return std::vector<double>(c.values().begin(), c.values().end()); };
    data.columns = {std::vector<double>(pts.begin(), pts.end()), col(set.plus), col(set.minus),
                    col(set.sum), col(set.difference), col(set.general)};
    emit(cfg.out, out, to_text(data, cfg.format));
    return kExitOk;
}

int cmd_figure1(const RunConfig& cfg, std::ostream& out) {
    const MeterState meter = build_meter(cfg);
    const fs::path dir = cfg.out == "-" ? fs::path("figure1") : fs::path(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());

    const auto pts = meter.grid().points();
    for (std::size_t panel = 0; panel < std::size(kFigurePanels); ++panel) {
        const double chi = kFigureChiFractions[panel] * std::numbers::pi / 2;
        io::ColumnarData data;
        data.metadata = base_metadata("figure1", cfg, meter);
        data.metadata.emplace_back("panel", std::string(1, kFigurePanels[panel]));
        data.metadata.emplace_back("chi", io::format_short(chi));
        data.metadata.emplace_back("chi_over_half_pi", io::format_short(kFigureChiFractions[panel]));
        data.names = {"p"};
        data.columns = {std::vector<double>(pts.begin(), pts.end())};
        out << "panel " << kFigurePanels[panel] << " chi=" << io::format_short(chi);
        for (std::size_t t = 0; t < std::size(kFigureThetas); ++t) {
            const double theta = kFigureThetas[t];
            const auto curve = general_signal(theta, cfg.g, chi, meter);
            data.names.push_back(std::string("general_") + kFigureThetaLabels[t]);
            data.metadata.emplace_back(std::string("theta_") + kFigureThetaLabels[t], io::format_short(theta));
            data.columns.emplace_back(curve.values().begin(), curve.values().end());
            data.metadata.emplace_back(std::string("peak_abs_") + kFigureThetaLabels[t],
                                       io::format_short(curve.peak_abs()));
            out << " peak(theta=" << io::format_short(theta) << ")=" << io::format_short(curve.peak_abs());
        }
        out << '\n';
        const fs::path file = dir / (std::string("panel_") + kFigurePanels[panel] + ".dat");
        emit(file.string(), out, to_text(data, cfg.format));
    }
    return kExitOk;
}

int cmd_sweep_chi(const RunConfig& cfg, std::ostream& out) {
    const MeterState meter = build_meter(cfg);
    const std::size_t n = std::max<std::size_t>(cfg.chi_points, 2);
    io::ColumnarData data;
    data.metadata = base_metadata("sweep-chi", cfg, meter);
    data.metadata.emplace_back("theta", io::format_short(cfg.theta));
    data.names = {"chi", "peak_abs", "peak_location"};
    data.columns.assign(3, {});
    for (std::size_t k = 0; k < n; ++k) {
        const double chi = (std::numbers::pi / 2) * static_cast<double>(k) / static_cast<double>(n - 1);
        const auto curve = general_signal(cfg.theta, cfg.g, chi, meter);
        data.columns[0].push_back(chi);
        data.columns[1].push_back(curve.peak_abs());
        data.columns[2].push_back(curve.peak_location());
    }
    emit(cfg.out, out, to_text(data, cfg.format));
    return kExitOk;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const MeterState meter = build_meter(cfg);
    const auto shots = sample_shots(cfg.shots, cfg.theta, cfg.g, cfg.chi, meter, cfg.seed);
    const SearchWindow window =
        cfg.window.empty() ? default_search_window(shots, cfg.g, cfg.chi) : parse_window(cfg.window);
    const auto est = mle_theta(shots, cfg.g, cfg.chi, window);
    const double info = fisher_information(est.theta_hat, cfg.g, cfg.chi, meter);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ordered_json r;
    r["tool"] = kName;
    r["version"] = kVersion;
    r["rng"] = kRngName;
    r["kernels"] = kernels::isa_name(kernels::active_isa());
    r["seed"] = cfg.seed;
    r["n_shots"] = est.n_shots;
    r["theta_true"] = cfg.theta;
    r["g"] = cfg.g;
    r["chi"] = cfg.chi;
    if (cfg.density_file.empty()) {
        r["sigma"] = cfg.sigma;
    } else {
        r["density_file"] = cfg.density_file;
    }
    r["grid"] = {meter.grid().min(), meter.grid().max(), meter.grid().size()};
    r["window"] = {window.lo, window.hi};
    r["converged"] = est.converged;
    r["theta_hat"] = est.theta_hat;
    r["stderr"] = est.std_error;
    r["loglik"] = est.loglik;
    r["fisher_information"] = info;
    r["cramer_rao_stderr"] = info > 0.0 ? 1.0 / std::sqrt(static_cast<double>(est.n_shots) * info) : 0.0;
    r["wall_time_s"] = wall;

    std::string text;
    if (cfg.format == "text") {
        std::ostringstream ss;
        for (const auto& [k, v] : r.items()) ss << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        text = ss.str();
    } else {
        text = r.dump(2) + "\n";
    }
    emit(cfg.out, out, text);
    return est.converged ? kExitOk : kExitFailure;
}

void add_meter_flags(CLI::App* cmd, RunConfig& cfg, std::string& grid_text) {
    cmd->add_option("--g", cfg.g, "coupling strength g (inverse momentum)");
    auto* sigma = cmd->add_option("--sigma", cfg.sigma, "Gaussian meter momentum width")
                      ->check(CLI::PositiveNumber);
    auto* density = cmd->add_option("--density-file", cfg.density_file,
                                    "two-column (p, P_i(p)) text file; replaces the Gaussian meter")
                        ->check(CLI::ExistingFile);
    auto* grid = cmd->add_option("--grid", grid_text, "momentum grid p_min:p_max:n");
    density->excludes(sigma);
    density->excludes(grid);
    cmd->add_option("--out", cfg.out, "output path ('-' for stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Postselected weak-measurement signals, figure data and phase estimation", "wvamp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig cfg;
    std::string grid_text;

    auto* dist = app.add_subcommand("distribution", "port distributions and signals on the grid");
    dist->add_option("--theta", cfg.theta, "preselection phase theta");
    dist->add_option("--chi", cfg.chi, "postselection angle chi");
    add_meter_flags(dist, cfg, grid_text);
    dist->add_option("--format", cfg.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    auto* fig = app.add_subcommand("figure1", "general signal for 4 chi x 3 theta, one file per panel");
    add_meter_flags(fig, cfg, grid_text);
    fig->add_option("--format", cfg.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    auto* est = app.add_subcommand("estimate", "simulate shots and estimate theta by maximum likelihood");
    est->add_option("--theta", cfg.theta, "true preselection phase used to simulate shots");
    est->add_option("--chi", cfg.chi, "postselection angle chi");
    est->add_option("--shots", cfg.shots, "number of shots")->check(CLI::PositiveNumber);
    est->add_option("--seed", cfg.seed, "64-bit RNG seed");
    est->add_option("--window", cfg.window, "search window lo:hi (default: coarse scan)");
    add_meter_flags(est, cfg, grid_text);
    est->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* sweep = app.add_subcommand("sweep-chi", "peak amplitude and location of |general signal| vs chi");
    sweep->add_option("--theta", cfg.theta, "preselection phase theta");
    sweep->add_option("--chi-points", cfg.chi_points, "number of chi values in [0, pi/2]")
        ->check(CLI::Range(2, 100000));
    add_meter_flags(sweep, cfg, grid_text);
    sweep->add_option("--format", cfg.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
        if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
        if (!cfg.window.empty()) (void)parse_window(cfg.window);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "wvamp: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*dist) return cmd_distribution(cfg, out);
        if (*fig) return cmd_figure1(cfg, out);
        if (*est) return cmd_estimate(cfg, out);
        if (*sweep) return cmd_sweep_chi(cfg, out);
    } catch (const InvalidArgument& e) {
        err << "wvamp: invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainCoverageError& e) {
        err << "wvamp: invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "wvamp: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace wvamp::cli
