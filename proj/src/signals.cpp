#include "wvamp/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wvamp/errors.hpp"
#include "wvamp/kernels.hpp"

namespace wvamp {
namespace {

void require_finite(double theta, double g, double chi) {
    if (!std::isfinite(theta) || !std::isfinite(g) || !std::isfinite(chi)) {
        throw InvalidArgument("theta, g and chi must be finite");
    }
}

struct HalfAngles {
    std::vector<double> s;
    std::vector<double> c;
};

// sin/cos of (offset + g p) over the grid.
HalfAngles half_angles(double offset, double g, const MomentumGrid& grid) {
    HalfAngles h{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
    kernels::sincos_affine(offset, g, grid.points(), h.s, h.c);
    return h;
}

PortPair ports_from(const HalfAngles& h, const MeterState& meter) {
    const auto d = meter.momentum_density();
    std::vector<double> plus(d.size()), minus(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        plus[i] = h.c[i] * h.c[i] * d[i];
        minus[i] = h.s[i] * h.s[i] * d[i];
    }
    return {SignalCurve(meter.grid(), std::move(plus)), SignalCurve(meter.grid(), std::move(minus))};
}

SignalCurve general_from(const HalfAngles& h, double chi, const MeterState& meter) {
    const auto d = meter.momentum_density();
    const double cc = std::cos(chi);
    const double sc = std::sin(chi);
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        // 1 - cos a = 2 sin^2(a/2), sin a = 2 sin(a/2) cos(a/2)
        const double s = h.s[i];
        const double c = h.c[i];
        out[i] = (2.0 * s * s * cc + 2.0 * s * c * sc) * d[i];
    }
    return {meter.grid(), std::move(out)};
}

SignalCurve combine(const SignalCurve& a, const SignalCurve& b, double wa, double wb) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = wa * a[i] + wb * b[i];
    return {a.grid(), std::move(out)};
}

}  // namespace

const char* port_name(Port port) noexcept { return port == Port::plus ? "plus" : "minus"; }

double port_factor(double theta, double g, double chi, Port port, double p) noexcept {
    const double half = 0.5 * (theta + chi) + g * p;
    const double t = port == Port::plus ? std::cos(half) : std::sin(half);
    return t * t;
}

double general_factor(double theta, double g, double chi, double p) noexcept {
    const double a = theta + 2.0 * g * p;
    return (1.0 - std::cos(a)) * std::cos(chi) + std::sin(a) * std::sin(chi);
}

PortPair port_distributions(double theta, double g, double chi, const MeterState& meter) {
    require_finite(theta, g, chi);
    return ports_from(half_angles(0.5 * (theta + chi), g, meter.grid()), meter);
}

SignalCurve port_distribution(double theta, double g, double chi, Port port,
                              const MeterState& meter) {
    auto pair = port_distributions(theta, g, chi, meter);
    return port == Port::plus ? std::move(pair.plus) : std::move(pair.minus);
}

SignalCurve sum_signal(double theta, double g, double chi, const MeterState& meter) {
    const auto pair = port_distributions(theta, g, chi, meter);
    return combine(pair.plus, pair.minus, 1.0, 1.0);
}

SignalCurve difference_signal(double theta, double g, double chi, const MeterState& meter) {
    const auto pair = port_distributions(theta, g, chi, meter);
    return combine(pair.minus, pair.plus, 1.0, -1.0);
}

SignalCurve general_signal(double theta, double g, double chi, const MeterState& meter) {
    require_finite(theta, g, chi);
    return general_from(half_angles(0.5 * theta, g, meter.grid()), chi, meter);
}

SignalSet all_signals(double theta, double g, double chi, const MeterState& meter) {
    auto pair = port_distributions(theta, g, chi, meter);
    auto sum = combine(pair.plus, pair.minus, 1.0, 1.0);
    auto diff = combine(pair.minus, pair.plus, 1.0, -1.0);
    auto general = general_signal(theta, g, chi, meter);
    return {std::move(pair.plus), std::move(pair.minus), std::move(sum), std::move(diff),
            std::move(general)};
}

std::vector<double> detection_zeros(double theta, double g, double chi, const MomentumGrid& grid) {
    require_finite(theta, g, chi);
    if (g == 0.0) {
        throw NoZerosDefined("detection zeros are undefined at zero coupling");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double shift = theta + chi;
    double lo = shift + 2.0 * g * grid.min();
    double hi = shift + 2.0 * g * grid.max();
    if (lo > hi) std::swap(lo, hi);
    const double k_lo = std::ceil(lo / two_pi) - 1.0;
    const double k_hi = std::floor(hi / two_pi) + 1.0;
    if (k_hi - k_lo > 1e7) throw InvalidArgument("detection_zeros: too many zeros in range");

    std::vector<double> zeros;
    for (double k = k_lo; k <= k_hi; k += 1.0) {
        const double p = (two_pi * k - shift) / (2.0 * g);
        if (grid.contains(p)) zeros.push_back(p);
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

}  // namespace wvamp
