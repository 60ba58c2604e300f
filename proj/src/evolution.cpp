#include "wvamp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wvamp/errors.hpp"

namespace wvamp {
namespace {

struct BranchWeights {
    complex shifted_minus;  // c0 d0*: the |0> branch, A = -1
    complex shifted_plus;   // c1 d1*: the |1> branch, A = +1
};

BranchWeights branch_weights(const QubitState& pre, const QubitState& post) {
    return {pre.c0() * std::conj(post.c0()), pre.c1() * std::conj(post.c1())};
}

void require_finite_coupling(double g) {
    if (!std::isfinite(g)) throw InvalidArgument("coupling g must be finite");
}

double conditional_moment(const PostselectedMeter& psm, Representation want, const char* what) {
    if (psm.representation() != want) {
        throw RepresentationError(std::string(what) + ": state is in the wrong representation");
    }
    const double P = psm.success_probability();
    if (!(P > kMinSuccessProbability)) {
        throw UndefinedConditionalState(std::string(what) +
                                        ": postselection success probability is zero");
    }
    return moment(psm.grid(), psm.density(), 1) / P;
}

}  // namespace

void InteractionParams::validate() const {
    if (!std::isfinite(g) || !std::isfinite(theta)) {
        throw InvalidArgument("interaction parameters must be finite");
    }
}

PostselectedMeter::PostselectedMeter(Representation rep, UniformGrid grid,
                                     std::vector<complex> amplitudes)
    : rep_(rep), grid_(std::move(grid)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != grid_.size()) throw InvalidArgument("postselected meter: size mismatch");
    success_probability_ = integrate(grid_, density());
}

std::vector<double> PostselectedMeter::density() const {
    std::vector<double> d(amplitudes_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(amplitudes_[i]);
    return d;
}

PostselectedMeter evolve_and_postselect_p(const QubitState& pre, const QubitState& post, double g,
                                          const MeterState& meter) {
    require_finite_coupling(g);
    if (!meter.is_pure()) {
        throw RepresentationError("evolve_and_postselect_p requires a pure meter");
    }
    const auto [alpha, beta] = branch_weights(pre, post);
    const auto phi = meter.amplitudes();
    const auto p = meter.grid().points();
    std::vector<complex> a(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const complex kick = std::polar(1.0, g * p[i]);
        a[i] = (alpha * kick + beta * std::conj(kick)) * phi[i];
    }
    return {Representation::momentum, meter.grid(), std::move(a)};
}

UniformGrid default_position_grid(const MeterState& meter, double g) {
    double width;
    if (const auto sigma = meter.gaussian_sigma()) {
        width = 1.0 / (2.0 * *sigma);
    } else {
        const auto d = meter.momentum_density();
        const double m1 = moment(meter.grid(), d, 1);
        const double m2 = moment(meter.grid(), d, 2);
        const double spread = std::sqrt(std::max(m2 - m1 * m1, 0.0));
        if (!(spread > 0.0)) throw InvalidArgument("meter has zero momentum spread");
        width = 1.0 / (2.0 * spread);
    }
    return UniformGrid::symmetric(10.0 * width + std::abs(g), 4001);
}

PostselectedMeter evolve_and_postselect_q(const QubitState& pre, const QubitState& post, double g,
                                          const MeterState& meter,
                                          const std::optional<UniformGrid>& q_grid) {
    require_finite_coupling(g);
    if (!meter.is_pure()) {
        throw RepresentationError("evolve_and_postselect_q requires a pure meter");
    }
    const UniformGrid grid = q_grid ? *q_grid : default_position_grid(meter, g);
    const auto [alpha, beta] = branch_weights(pre, post);
    std::vector<complex> b(grid.size());
    if (const auto sigma = meter.gaussian_sigma()) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double q = grid[i];
            b[i] = alpha * gaussian_position_amplitude(q + g, *sigma) +
                   beta * gaussian_position_amplitude(q - g, *sigma);
        }
    } else {
        const auto left = position_wavefunction(meter, grid, g);
        const auto right = position_wavefunction(meter, grid, -g);
        for (std::size_t i = 0; i < grid.size(); ++i) b[i] = alpha * left[i] + beta * right[i];
    }
    return {Representation::position, grid, std::move(b)};
}

double mean_p_final(const PostselectedMeter& psm) {
    return conditional_moment(psm, Representation::momentum, "mean_p_final");
}

double mean_q_final(const PostselectedMeter& psm) {
    return conditional_moment(psm, Representation::position, "mean_q_final");
}

SignalCurve classical_mixed_postselect(double theta, double g, const MeterState& density,
                                       const QubitState& post) {
    if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
    require_finite_coupling(g);
    // |<post|psi(p)>|^2 = (|d0|^2 + |d1|^2)/2 + Re(d0* d1 e^{i(theta + 2gp)}), written in
    // half-angle form so that exact dark ports come out exactly zero.
    const double m0 = std::abs(post.c0());
    const double m1 = std::abs(post.c1());
    const double offset = 0.5 * (m0 - m1) * (m0 - m1);
    const double rho = m0 * m1;
    const complex z = std::conj(post.c0()) * post.c1();
    const bool use_cos = z.real() >= 0.0;
    const double mu = use_cos ? std::arg(z) : std::arg(-z);

    const auto p = density.grid().points();
    const auto pi = density.momentum_density();
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double half = 0.5 * (theta + 2.0 * g * p[i] + mu);
        const double t = use_cos ? std::cos(half) : std::sin(half);
        out[i] = (offset + 2.0 * rho * t * t) * pi[i];
    }
    return {density.grid(), std::move(out)};
}

SignalCurve unpostselected_momentum_density(const QubitState& pre, double g,
                                            const MeterState& meter) {
    const auto d0 = evolve_and_postselect_p(pre, QubitState::zero(), g, meter).density();
    const auto d1 = evolve_and_postselect_p(pre, QubitState::one(), g, meter).density();
    std::vector<double> total(d0.size());
    for (std::size_t i = 0; i < total.size(); ++i) total[i] = d0[i] + d1[i];
    return {meter.grid(), std::move(total)};
}

double conditional_mean(const SignalCurve& curve) {
    const double total = curve.total();
    if (!(total > kMinSuccessProbability)) {
        throw UndefinedConditionalState("conditional_mean: curve integrates to zero");
    }
    return moment(curve, 1) / total;
}

}  // namespace wvamp
