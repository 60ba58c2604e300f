#include "wvamp/qubit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvamp/errors.hpp"

namespace wvamp {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

QubitState::QubitState(complex c0, complex c1) : c0_(c0), c1_(c1) {
    const double n = norm_squared();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        throw InvalidArgument("qubit state is not normalized (|c0|^2+|c1|^2 = " +
                              std::to_string(n) + ")");
    }
}

QubitState QubitState::with_global_phase(double phase) const {
    const complex u = std::polar(1.0, phase);
    return {u * c0_, u * c1_};
}

complex inner(const QubitState& bra, const QubitState& ket) noexcept {
    return std::conj(bra.c0()) * ket.c0() + std::conj(bra.c1()) * ket.c1();
}

QubitState make_preselection_phase(double theta) {
    require_finite(theta, "theta");
    return {std::polar(kInvSqrt2, theta), kInvSqrt2};
}

RealPreselection make_preselection_real(double delta) {
    require_finite(delta, "delta");
    if (std::abs(delta) >= 2.0) throw InvalidArgument("make_preselection_real requires |delta| < 2");
    const double t = 0.5 * (delta + std::sqrt(4.0 - delta * delta));
    const double r = t - delta;
    return {QubitState(t * kInvSqrt2, r * kInvSqrt2), t, r};
}

PostselectionPair make_postselection_pair(double chi) {
    require_finite(chi, "chi");
    const complex e = std::polar(kInvSqrt2, chi);
    const bool out_of_range = chi < 0.0 || chi > std::numbers::pi / 2;
    return {QubitState(kInvSqrt2, e), QubitState(kInvSqrt2, -e), out_of_range};
}

QubitState dark_port() { return {kInvSqrt2, -kInvSqrt2}; }
QubitState bright_port() { return {kInvSqrt2, kInvSqrt2}; }

}  // namespace wvamp
