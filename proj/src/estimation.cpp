#include "wvamp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "wvamp/errors.hpp"
#include "wvamp/kernels.hpp"

namespace wvamp {
namespace {

// Cumulative trapezoid masses: cdf[0] = 0, cdf[i+1] = cdf[i] + (f_i + f_{i+1}) dp / 2.
std::vector<double> cumulative(const SignalCurve& curve) {
    const auto f = curve.values();
    const double dp = curve.grid().spacing();
    std::vector<double> cdf(f.size());
    cdf[0] = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) cdf[i + 1] = cdf[i] + 0.5 * (f[i] + f[i + 1]) * dp;
    return cdf;
}

double invert_cdf(const std::vector<double>& cdf, const MomentumGrid& grid, double u) {
    const double target = u * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    // target < cdf.back() because u < 1, so it != begin() and it != end().
    const auto i = static_cast<std::size_t>(std::distance(cdf.begin(), it)) - 1;
    const double frac = (target - cdf[i]) / (cdf[i + 1] - cdf[i]);
    return std::min(grid[i] + frac * grid.spacing(), grid.max());
}

void require_samples(std::span<const ShotSample> samples) {
    if (samples.empty()) throw InvalidArgument("estimation requires at least one shot");
}

}  // namespace

std::vector<ShotSample> sample_shots(std::size_t n, double theta_true, double g, double chi,
                                     const MeterState& meter, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("sample_shots: n must be at least 1");
    const auto ports = port_distributions(theta_true, g, chi, meter);
    const auto cdf_plus = cumulative(ports.plus);
    const auto cdf_minus = cumulative(ports.minus);
    const double mass_plus = cdf_plus.back();
    const double mass_minus = cdf_minus.back();
    const double total = mass_plus + mass_minus;
    if (!(total > 0.0)) throw SamplingError("sample_shots: both ports carry zero probability");
    const double p_plus = mass_plus / total;

    const MomentumGrid& grid = meter.grid();
    ShotRng rng(seed);
    std::vector<ShotSample> shots;
    shots.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Port port = rng.uniform() < p_plus ? Port::plus : Port::minus;
        const double u = rng.uniform();
        const double p = invert_cdf(port == Port::plus ? cdf_plus : cdf_minus, grid, u);
        shots.push_back({port, p});
    }
    return shots;
}

LikelihoodModel::LikelihoodModel(std::span<const ShotSample> samples, double g, double chi) {
    require_samples(samples);
    if (!std::isfinite(g) || !std::isfinite(chi)) throw InvalidArgument("g and chi must be finite");
    for (const auto& s : samples) {
        const double half = g * s.p + 0.5 * chi;
        (s.port == Port::plus ? plus_ : minus_).push_back(half);
    }
}

LogLikelihood LikelihoodModel::operator()(double theta) const {
    const double shift = 0.5 * theta;
    // (1 + cos x)/2 = cos^2(x/2), (1 - cos x)/2 = sin^2(x/2)
    const auto a = kernels::sum_log_cos_sq(shift, plus_);
    const auto b = kernels::sum_log_sin_sq(shift, minus_);
    LogLikelihood out;
    out.zero_factor_shots = a.zeros + b.zeros;
    out.floored = out.zero_factor_shots > 0;
    out.value = out.floored ? kLogLikelihoodFloor : a.value + b.value;
    return out;
}

LogLikelihood log_likelihood(std::span<const ShotSample> samples, double theta, double g,
                             double chi) {
    return LikelihoodModel(samples, g, chi)(theta);
}

EstimationResult mle_theta(std::span<const ShotSample> samples, double g, double chi,
                           SearchWindow window, const MleOptions& options) {
    require_samples(samples);
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.lo < window.hi)) {
        throw InvalidArgument("mle_theta: search window must be a finite, non-empty interval");
    }
    if (options.scan_points < 3) throw InvalidArgument("mle_theta: need at least 3 scan points");
    const LikelihoodModel model(samples, g, chi);

    const std::size_t m = options.scan_points;
    const double step = (window.hi - window.lo) / static_cast<double>(m - 1);
    auto scan_theta = [&](std::size_t k) { return window.lo + step * static_cast<double>(k); };

    std::size_t best = m;
    double best_value = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto l = model(scan_theta(k));
        if (l.floored) continue;
        if (best == m || l.value > best_value) {
            best = k;
            best_value = l.value;
        }
    }
    if (best == m) throw InvalidArgument("mle_theta: likelihood is floored across the window");

    const double lo = best == 0 ? window.lo : scan_theta(best - 1);
    const double hi = best + 1 == m ? window.hi : scan_theta(best + 1);
    const int bits = static_cast<int>(std::ceil(1.0 - std::log2(options.tolerance)));
    const auto neg = [&](double theta) {
        const auto l = model(theta);
        return l.floored ? -kLogLikelihoodFloor : -l.value;
    };
    const auto [theta_hat, neg_at_max] = boost::math::tools::brent_find_minima(neg, lo, hi, bits);

    EstimationResult result;
    result.theta_hat = theta_hat;
    result.n_shots = samples.size();
    const auto at = model(theta_hat);
    result.loglik = at.value;

    const double h = options.curvature_step;
    const auto up = model(theta_hat + h);
    const auto down = model(theta_hat - h);
    const double information = -(up.value - 2.0 * at.value + down.value) / (h * h);
    const bool floored = at.floored || up.floored || down.floored;
    const bool interior = best != 0 && best + 1 != m;
    result.converged = interior && !floored && std::isfinite(information) && information > 0.0;
    if (result.converged) result.std_error = 1.0 / std::sqrt(information);
    (void)neg_at_max;
    return result;
}

SearchWindow default_search_window(std::span<const ShotSample> samples, double g, double chi) {
    require_samples(samples);
    const LikelihoodModel model(samples, g, chi);
    constexpr double half_pi = std::numbers::pi / 2;
    constexpr double quarter_pi = std::numbers::pi / 4;
    const double step = 2.0 * half_pi / static_cast<double>(kCoarseScanPoints - 1);
    double theta0 = 0.0;
    bool have = false;
    double best = 0.0;
    for (std::size_t k = 0; k < kCoarseScanPoints; ++k) {
        const double theta = -half_pi + step * static_cast<double>(k);
        const auto l = model(theta);
        if (l.floored) continue;
        if (!have || l.value > best) {
            have = true;
            best = l.value;
            theta0 = theta;
        }
    }
    return {theta0 - quarter_pi, theta0 + quarter_pi};
}

double fisher_information(double theta, double g, double chi, const MeterState& meter) {
    if (!std::isfinite(theta) || !std::isfinite(g) || !std::isfinite(chi)) {
        throw InvalidArgument("theta, g and chi must be finite");
    }
    const auto& grid = meter.grid();
    const auto d = meter.momentum_density();
    std::vector<double> s(grid.size()), c(grid.size());
    kernels::sincos_affine(0.5 * (theta + chi), g, grid.points(), s, c);

    // Pr_+ = c^2 d, Pr_- = s^2 d, d Pr_+/d theta = -s c d = -d Pr_-/d theta, so
    // (d Pr_+)^2 / Pr_+ = s^2 d and (d Pr_-)^2 / Pr_- = c^2 d. Written in the cancelled
    // form these take their limits at isolated zeros of a port factor (a node sitting
    // exactly on a dark-port zero must not drop out), and vanish where d = 0.
    std::vector<double> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        integrand[i] = s[i] * s[i] * d[i] + c[i] * c[i] * d[i];
    }
    return integrate(grid, integrand);
}

}  // namespace wvamp
