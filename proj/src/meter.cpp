#include "wvamp/meter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvamp/errors.hpp"

namespace wvamp {
namespace {

void check_normalized(const MomentumGrid& grid, std::span<const double> density, const char* what) {
    const double total = integrate(grid, density);
    if (!(std::abs(total - 1.0) <= MeterState::kNormTolerance)) {
        throw InvalidArgument(std::string(what) + " is not normalized (integral = " +
                              std::to_string(total) + ")");
    }
}

}  // namespace

MeterState MeterState::pure(MomentumGrid grid, std::vector<complex> amplitudes) {
    if (amplitudes.size() != grid.size()) throw InvalidArgument("pure meter: size mismatch");
    std::vector<double> density(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        const complex a = amplitudes[i];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("pure meter: amplitudes must be finite");
        }
        density[i] = std::norm(a);
    }
    check_normalized(grid, density, "pure meter");
    return MeterState(Kind::pure, std::move(grid),
                      std::make_shared<const std::vector<complex>>(std::move(amplitudes)),
                      std::make_shared<const std::vector<double>>(std::move(density)), std::nullopt);
}

MeterState MeterState::diagonal_mixed(MomentumGrid grid, std::vector<double> density) {
    if (density.size() != grid.size()) throw InvalidArgument("mixed meter: size mismatch");
    for (double d : density) {
        if (!std::isfinite(d) || d < 0.0) {
            throw InvalidArgument("mixed meter: density must be finite and non-negative");
        }
    }
    check_normalized(grid, density, "mixed meter density");
    return MeterState(Kind::diagonal_mixed, std::move(grid), nullptr,
                      std::make_shared<const std::vector<double>>(std::move(density)), std::nullopt);
}

std::span<const complex> MeterState::amplitudes() const {
    if (!is_pure()) throw RepresentationError("mixed meter has no wavefunction");
    return *amplitudes_;
}

double gaussian_momentum_amplitude(double p, double sigma) noexcept {
    const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
    return norm * std::exp(-p * p / (4.0 * sigma * sigma));
}

double gaussian_momentum_density(double p, double sigma) noexcept {
    const double a = gaussian_momentum_amplitude(p, sigma);
    return a * a;
}

double gaussian_position_amplitude(double q, double sigma) noexcept {
    const double norm = std::pow(2.0 * sigma * sigma / std::numbers::pi, 0.25);
    return norm * std::exp(-sigma * sigma * q * q);
}

MeterState gaussian_meter(double sigma, const MomentumGrid& grid) {
    if (!std::isfinite(sigma) || !(sigma > 0.0)) {
        throw InvalidArgument("gaussian_meter: sigma must be positive");
    }
    const double reach = kGaussianCoverageSigmas * sigma;
    if (grid.min() > -reach || grid.max() < reach) {
        throw DomainCoverageError("gaussian_meter: grid must span [-6 sigma, 6 sigma]");
    }
    const auto pts = grid.points();
    std::vector<complex> amps(pts.size());
    std::vector<double> density(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double a = gaussian_momentum_amplitude(pts[i], sigma);
        amps[i] = a;
        density[i] = std::norm(amps[i]);
    }
    return MeterState(MeterState::Kind::pure, grid,
                      std::make_shared<const std::vector<complex>>(std::move(amps)),
                      std::make_shared<const std::vector<double>>(std::move(density)), sigma);
}

MeterState diagonal_from(const MeterState& meter) {
    const auto d = meter.momentum_density();
    return MeterState::diagonal_mixed(meter.grid(), std::vector<double>(d.begin(), d.end()));
}

std::vector<double> normalize_density(const MomentumGrid& grid, std::vector<double> values) {
    if (values.size() != grid.size()) throw InvalidArgument("normalize_density: size mismatch");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("density samples must be finite and non-negative");
        }
    }
    const double total = integrate(grid, values);
    if (!(total > 0.0)) throw InvalidArgument("density integrates to zero");
    for (double& v : values) v /= total;
    return values;
}

std::vector<complex> position_wavefunction(const MeterState& meter, const UniformGrid& q_grid,
                                           double shift) {
    const auto amps = meter.amplitudes();
    const auto p = meter.grid().points();
    const double dp = meter.grid().spacing();
    const double prefactor = dp / std::sqrt(2.0 * std::numbers::pi);
    const std::size_t n = p.size();

    std::vector<complex> out(q_grid.size());
    for (std::size_t j = 0; j < q_grid.size(); ++j) {
        const double q = q_grid[j] + shift;
        // e^{i p_i q} by rotation, re-anchored every 64 steps to bound drift.
        const complex step = std::polar(1.0, dp * q);
        complex phase;
        complex acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i % 64 == 0) {
                phase = std::polar(1.0, p[i] * q);
            } else {
                phase *= step;
            }
            const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            acc += w * phase * amps[i];
        }
        out[j] = prefactor * acc;
    }
    return out;
}

}  // namespace wvamp
