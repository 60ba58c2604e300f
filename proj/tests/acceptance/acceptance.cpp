// Acceptance checks. One line per criterion:
//   [PASS] name (seconds): detail
// Run all with no arguments, or one with --criterion <name>. Exit status is 0 only
// if every selected criterion passes (runtime limits included).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"
#include "wvamp/errors.hpp"
#include "wvamp/estimation.hpp"
#include "wvamp/evolution.hpp"
#include "wvamp/kernels.hpp"
#include "wvamp/signals.hpp"
#include "wvamp/weak_value.hpp"

using namespace wvamp;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* name;
    double time_limit_s;  // <= 0: none stated
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

MeterState figure_meter() { return gaussian_meter(1.0, MomentumGrid::symmetric(10.0, 4001)); }

struct Point {
    double theta, g, chi;
};

// theta in {0, +-2e-4}, g in {0, 1e-4, 0.01}, chi in {0, pi/4, pi/2}
std::vector<Point> lattice27() {
    std::vector<Point> out;
    for (double theta : {0.0, 2e-4, -2e-4}) {
        for (double g : {0.0, 1e-4, 0.01}) {
            for (double chi : {0.0, std::numbers::pi / 4, kHalfPi}) out.push_back({theta, g, chi});
        }
    }
    return out;
}

Outcome fig1_amplitude() {
    const auto meter = figure_meter();
    const double sb = general_signal(2e-4, 1e-4, kHalfPi, meter).peak_abs();
    const double aav = general_signal(2e-4, 1e-4, 0.0, meter).peak_abs();
    const bool ok = std::abs(sb - 1.1e-4) <= 0.1 * 1.1e-4 && std::abs(aav - 2.0e-8) <= 0.1 * 2.0e-8;
    return {ok, fmt("max|general| chi=pi/2: %.4e (target 1.1e-4 +-10%%), chi=0: %.4e (target 2.0e-8 +-10%%)", sb, aav)};
}

Outcome sum_rule() {
    const auto meter = figure_meter();
    const auto d = meter.momentum_density();
    const double peak = *std::max_element(d.begin(), d.end());
    double worst = 0.0;
    for (const auto& [theta, g, chi] : lattice27()) {
        const auto ports = port_distributions(theta, g, chi, meter);
        for (std::size_t i = 0; i < d.size(); ++i) {
            worst = std::max(worst, std::abs(ports.plus[i] + ports.minus[i] - d[i]));
        }
    }
    return {worst <= 1e-14 * peak, fmt("max |Pr+ + Pr- - P_i| = %.3e, bound %.3e, 27 combinations", worst, 1e-14 * peak)};
}

Outcome classicality() {
    const auto pure = figure_meter();
    const auto mixed = diagonal_from(pure);
    double worst_density = 0.0, worst_mean = 0.0;
    int compared_means = 0, undefined_both = 0, undefined_mismatch = 0;
    for (const auto& [theta, g, chi] : lattice27()) {
        const auto pair = make_postselection_pair(chi);
        for (const auto& post : {pair.plus, pair.minus}) {
            const auto psm = evolve_and_postselect_p(make_preselection_phase(theta), post, g, pure);
            const auto a = psm.density();
            const auto b = classical_mixed_postselect(theta, g, mixed, post);
            for (std::size_t i = 0; i < a.size(); ++i) worst_density = std::max(worst_density, std::abs(a[i] - b[i]));
            bool pure_ok = true, classical_ok = true;
            double mp = 0.0, mc = 0.0;
            try {
                mp = mean_p_final(psm);
            } catch (const UndefinedConditionalState&) {
                pure_ok = false;
            }
            try {
                mc = conditional_mean(b);
            } catch (const UndefinedConditionalState&) {
                classical_ok = false;
            }
            if (pure_ok && classical_ok) {
                worst_mean = std::max(worst_mean, std::abs(mp - mc));
                ++compared_means;
            } else if (!pure_ok && !classical_ok) {
                ++undefined_both;
            } else {
                ++undefined_mismatch;
            }
        }
    }
    const bool ok = worst_density <= 1e-12 && worst_mean <= 1e-10 && undefined_mismatch == 0;
    return {ok, fmt("max density diff %.3e (<=1e-12), max mean diff %.3e (<=1e-10) over %d means; "
                    "%d zero-probability ports undefined in both models, %d mismatched",
                    worst_density, worst_mean, compared_means, undefined_both, undefined_mismatch)};
}

Outcome dark_zeros() {
    const Point cases[] = {{0.0, 1e-4, 0.0}, {2e-4, 1e-4, 0.0}, {0.3, 0.9, 0.2}, {2e-4, 0.5, std::numbers::pi / 4},
                           {-0.1, 2.0, kHalfPi}, {1.0, -0.7, 0.1}};
    const auto base = MomentumGrid::symmetric(10.0, 4001);
    const auto meter = gaussian_meter(1.0, base);
    const double half_cell = 0.5 * base.spacing();
    std::size_t n_zeros = 0;
    double worst_ratio = 0.0, worst_formula = 0.0, worst_location = 0.0;
    for (const auto& [theta, g, chi] : cases) {
        const auto zeros = detection_zeros(theta, g, chi, base);
        const auto minus = port_distribution(theta, g, chi, Port::minus, meter);
        const double peak = minus.peak_abs();
        for (double pk : zeros) {
            ++n_zeros;
            // formula
            const double k = std::round((2 * g * pk + theta + chi) / (2 * std::numbers::pi));
            const double want = (2 * k * std::numbers::pi - theta - chi) / (2 * g);
            worst_formula = std::max(worst_formula, std::abs(pk - want));
            // value at the zero: same meter on the grid shifted (by < half a cell) to put p_k on a node
            const std::size_t j = base.nearest_index(pk);
            const double shift = pk - base[j];
            const MomentumGrid shifted(base.min() + shift, base.max() + shift, base.size());
            const auto at = port_distribution(theta, g, chi, Port::minus, gaussian_meter(1.0, shifted));
            worst_ratio = std::max(worst_ratio, at[j] / peak);
            // location: discrete local minimum of the sampled distribution over the meter
            // density (dividing out P_i removes the tilt its slope gives the raw samples)
            const auto d = meter.momentum_density();
            auto factor = [&](std::size_t i) { return minus[i] / d[i]; };
            std::size_t m = j;
            while (m > 0 && factor(m - 1) < factor(m)) --m;
            while (m + 1 < minus.size() && factor(m + 1) < factor(m)) ++m;
            worst_location = std::max(worst_location, std::abs(base[m] - pk));
        }
    }
    const bool ok = n_zeros > 0 && worst_ratio <= 1e-15 && worst_location <= half_cell && worst_formula <= 1e-12;
    return {ok, fmt("%zu zeros: max Pr-(p_k)/max Pr- = %.3e (<=1e-15), max |grid minimum - p_k| = %.3e "
                    "(<= half cell %.3e), max formula deviation %.3e",
                    n_zeros, worst_ratio, worst_location, half_cell, worst_formula)};
}

Outcome weak_value_law() {
    bool im_ok = true, re_ok = true;
    std::string detail;
    for (double theta : {1e-3, 1e-4, 1e-5}) {
        const complex w = weak_value(make_preselection_phase(theta), dark_port()).value;
        const double im_rel = std::abs(w.imag() - 2.0 / theta) / (2.0 / theta);
        const double re_dev = std::abs(w.real() - (-1.0));
        im_ok = im_ok && im_rel <= theta;
        re_ok = re_ok && re_dev <= theta;
        detail += fmt("theta=%g: Re=%.3e |Re+1|=%.3e (<=%g), Im rel err %.3e (<=%g); ", theta, w.real(), re_dev,
                      theta, im_rel, theta);
    }
    const auto tr = oracle::real_preselection(0.1);
    const complex w2 = weak_value(make_preselection_real(0.1).state, dark_port()).value;
    const double dev2 = std::abs(w2 - complex(-(tr.t + tr.r) / 0.1, 0.0));
    const bool real_ok = dev2 <= 1e-12;
    detail += fmt("delta=0.1: %.12f vs -(t+r)/delta, |diff|=%.3e (<=1e-12)", w2.real(), dev2);
    return {im_ok && re_ok && real_ok, detail};
}

Outcome representation_consistency() {
    const auto meter = figure_meter();
    double worst = 0.0;
    int n = 0;
    auto check = [&](const QubitState& pre, const QubitState& post, double g) {
        const double pp = evolve_and_postselect_p(pre, post, g, meter).success_probability();
        const double pq = evolve_and_postselect_q(pre, post, g, meter).success_probability();
        worst = std::max(worst, std::abs(pp - pq));
        ++n;
    };
    for (double theta : {0.0, 2e-4, -2e-4, 0.1}) {
        for (double g : {0.0, 1e-4, 0.01}) {
            for (double chi : {0.0, std::numbers::pi / 4, kHalfPi}) {
                const auto pair = make_postselection_pair(chi);
                check(make_preselection_phase(theta), pair.plus, g);
                check(make_preselection_phase(theta), pair.minus, g);
            }
        }
    }
    for (double g : {0.0, 1e-4, 0.01}) check(make_preselection_real(0.1).state, dark_port(), g);
    return {worst <= 1e-9, fmt("max |P_q - P_p| = %.3e (<=1e-9) over %d pre/post/g combinations", worst, n)};
}

Outcome trig_identity() {
    const auto meter = figure_meter();
    double worst = 0.0;
    for (const auto& [theta, g, chi] : lattice27()) {
        const auto s = all_signals(theta, g, chi, meter);
        for (std::size_t i = 0; i < s.general.size(); ++i) {
            worst = std::max(worst, std::abs(s.general[i] - (std::cos(chi) * s.sum[i] - (s.plus[i] - s.minus[i]))));
        }
    }
    return {worst <= 1e-13, fmt("max |general - (cos chi sum - (Pr+ - Pr-))| = %.3e (<=1e-13), 27 combinations", worst)};
}

Outcome estimator_suite() {
    const auto meter = figure_meter();
    const double g = 1e-4, chi = kHalfPi, theta_true = 2e-4;
    std::string detail;

    // (a) one million shots, default search window
    const auto shots = sample_shots(1'000'000, theta_true, g, chi, meter, 1);
    const auto est = mle_theta(shots, g, chi, default_search_window(shots, g, chi));
    const bool a_ok = est.converged && std::abs(est.theta_hat - theta_true) <= 4 * est.std_error;
    detail += fmt("(a) theta_hat=%.4e stderr=%.4e |err|/stderr=%.2f (<=4)%s; ", est.theta_hat, est.std_error,
                  std::abs(est.theta_hat - theta_true) / est.std_error, est.converged ? "" : " NOT CONVERGED");

    // (b) spread over 50 seeds at 1e5 shots against the Cramer-Rao scale
    const std::size_t n = 100'000;
    std::vector<double> hats;
    bool all_converged = true;
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        const auto s = sample_shots(n, theta_true, g, chi, meter, seed);
        const auto r = mle_theta(s, g, chi, {theta_true - std::numbers::pi / 4, theta_true + std::numbers::pi / 4});
        all_converged = all_converged && r.converged;
        hats.push_back(r.theta_hat);
    }
    double mean = 0.0;
    for (double h : hats) mean += h;
    mean /= static_cast<double>(hats.size());
    double var = 0.0;
    for (double h : hats) var += (h - mean) * (h - mean);
    const double sd = std::sqrt(var / static_cast<double>(hats.size() - 1));
    const double info = fisher_information(theta_true, g, chi, meter);
    const double crb = 1.0 / std::sqrt(static_cast<double>(n) * info);
    const double ratio = sd / crb;
    const bool b_ok = all_converged && ratio <= 1.5 && ratio >= 1.0 / 1.5;
    detail += fmt("(b) sd=%.4e vs 1/sqrt(nI)=%.4e (I=%.6f), ratio %.3f (in [1/1.5, 1.5])%s; ", sd, crb, info, ratio,
                  all_converged ? "" : " some fits NOT CONVERGED");

    // (c) pooled p histogram of (a)'s shots vs the meter density: 48 bins on [-3, 3] plus two tails
    constexpr int inner = 48;
    std::vector<double> edges(inner + 1);
    for (int i = 0; i <= inner; ++i) edges[i] = -3.0 + 6.0 * i / inner;
    std::vector<double> observed(inner + 2, 0.0);
    for (const auto& s : shots) {
        int bin;
        if (s.p < edges.front()) {
            bin = 0;
        } else if (s.p >= edges.back()) {
            bin = inner + 1;
        } else {
            bin = 1 + static_cast<int>(std::upper_bound(edges.begin(), edges.end(), s.p) - edges.begin()) - 1;
        }
        observed[bin] += 1.0;
    }
    const double total = static_cast<double>(shots.size());
    double chi2 = 0.0;
    for (int b = 0; b < inner + 2; ++b) {
        const double lo = b == 0 ? -INFINITY : edges[b - 1];
        const double hi = b == inner + 1 ? INFINITY : edges[b];
        const double p_lo = std::isinf(lo) ? 0.0 : oracle::normal_cdf(lo);
        const double p_hi = std::isinf(hi) ? 1.0 : oracle::normal_cdf(hi);
        const double expected = total * (p_hi - p_lo);
        chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
    }
    const double df = inner + 2 - 1;
    const double critical = boost::math::quantile(boost::math::chi_squared(df), 0.99);
    const bool c_ok = chi2 <= critical;
    detail += fmt("(c) chi2=%.2f (<= %.2f, df=%.0f, 99%%)", chi2, critical, df);

    return {a_ok && b_ok && c_ok, detail};
}

Outcome any_meter() {
    const auto grid = MomentumGrid::symmetric(12.0, 4001);
    std::vector<complex> amps(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = static_cast<double>(0.55L * oracle::normal_pdf(grid[i] - 2.5L, 0.8L) +
                                             0.45L * oracle::normal_pdf(grid[i] + 1.5L, 1.3L));
        amps[i] = std::sqrt(d);
    }
    const auto pure = MeterState::pure(grid, amps);
    const auto dens = pure.momentum_density();
    const auto mixed = MeterState::diagonal_mixed(grid, std::vector<double>(dens.begin(), dens.end()));
    std::size_t mismatches = 0, compared = 0;
    for (const auto& [theta, g, chi] : lattice27()) {
        for (Port port : {Port::plus, Port::minus}) {
            const auto a = port_distribution(theta, g, chi, port, pure);
            const auto b = port_distribution(theta, g, chi, port, mixed);
            compared += a.size();
            if (std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) != 0) ++mismatches;
        }
    }
    return {mismatches == 0, fmt("%zu samples over 54 port curves, %zu curves differ bitwise", compared, mismatches)};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"fig1_amplitude", 1.0, fig1_amplitude},
        {"sum_rule", 1.0, sum_rule},
        {"classicality", 1.0, classicality},
        {"dark_zeros", 1.0, dark_zeros},
        {"weak_value_law", 0.0, weak_value_law},
        {"representation_consistency", 0.0, representation_consistency},
        {"trig_identity", 0.0, trig_identity},
        {"estimator_suite", 60.0, estimator_suite},
        {"any_meter", 0.0, any_meter},
    };
    return all;
}

bool run_one(const Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.3fs", dt);
    if (c.time_limit_s > 0) {
        timing += fmt(" / limit %.0fs", c.time_limit_s);
        if (dt >= c.time_limit_s) {
            pass = false;
            o.detail += "; runtime limit exceeded";
        }
    }
    std::printf("[%s] %s (%s): %s\n", pass ? "PASS" : "FAIL", c.name, timing.c_str(), o.detail.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : criteria()) std::printf("%s\n", c.name);
            return 0;
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion NAME] [--list]\n");
            return 2;
        }
    }
    std::printf("kernels: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
    bool all = true, found = false;
    for (const auto& c : criteria()) {
        if (!only.empty() && only != c.name) continue;
        found = true;
        all = run_one(c) && all;
    }
    if (!found) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return all ? 0 : 1;
}
