#pragma once

#include <optional>
#include <vector>

#include "wvamp/grid.hpp"
#include "wvamp/meter.hpp"
#include "wvamp/qubit.hpp"

namespace wvamp {

// Coupling g of U = exp(-i g A p) (inverse-momentum units, hbar = 1) and the
// preselection phase theta of the (e^{i theta}|0> + |1>)/sqrt(2) family.
struct InteractionParams {
    double g = 0.0;
    double theta = 0.0;

    // Throws InvalidArgument for non-finite fields.
    void validate() const;
};

enum class Representation { momentum, position };

// Meter state left after the interaction and a successful postselection. The
// amplitudes are unnormalized: their squared modulus integrates to the success
// probability. Normalization by 1/sqrt(P) only happens inside moment computations.
class PostselectedMeter {
public:
    PostselectedMeter(Representation rep, UniformGrid grid, std::vector<complex> amplitudes);

    Representation representation() const noexcept { return rep_; }
    const UniformGrid& grid() const noexcept { return grid_; }
    const std::vector<complex>& amplitudes() const noexcept { return amplitudes_; }
    double success_probability() const noexcept { return success_probability_; }

    // |amplitude|^2 at every grid point (unnormalized).
    std::vector<double> density() const;

private:
    Representation rep_;
    UniformGrid grid_;
    std::vector<complex> amplitudes_;
    double success_probability_;
};

// Conditional moments are refused below this success probability.
inline constexpr double kMinSuccessProbability = 1e-300;

// a(p) = (c0 d0* e^{igp} + c1 d1* e^{-igp}) phi(p) for pre = (c0, c1), post = (d0, d1).
// Throws RepresentationError unless meter is pure.
PostselectedMeter evolve_and_postselect_p(const QubitState& pre, const QubitState& post, double g,
                                          const MeterState& meter);

// b(q) = c0 d0* phi~(q + g) + c1 d1* phi~(q - g). Gaussian meters use the closed-form
// position wavefunction; other pure meters go through position_wavefunction().
// When q_grid is omitted, default_position_grid(meter, g) is used.
PostselectedMeter evolve_and_postselect_q(const QubitState& pre, const QubitState& post, double g,
                                          const MeterState& meter,
                                          const std::optional<UniformGrid>& q_grid = std::nullopt);

// [-10 w - |g|, 10 w + |g|] x 4001 with w the position width: 1/(2 sigma) for the
// Gaussian meter, 1/(2 s_p) with s_p the momentum spread otherwise.
UniformGrid default_position_grid(const MeterState& meter, double g);

// int p |a(p)|^2 dp / P. Throws RepresentationError for a position-space state and
// UndefinedConditionalState when P <= kMinSuccessProbability.
double mean_p_final(const PostselectedMeter& psm);
// int q |b(q)|^2 dq / P, same errors with the representations swapped.
double mean_q_final(const PostselectedMeter& psm);

// Classical model: the meter is the momentum-diagonal mixture with density P_i(p),
// each momentum component leaves the system in
// (e^{i theta} e^{igp}|0> + e^{-igp}|1>)/sqrt(2), and postselection onto `post`
// weights it by |<post|psi(p)>|^2. Returns the unnormalized postselected density;
// its total is the success probability. Works on any meter through its momentum density.
SignalCurve classical_mixed_postselect(double theta, double g, const MeterState& density,
                                       const QubitState& post);

// Momentum density of the evolved joint state with the system traced out (no
// postselection). Equals |phi(p)|^2 since p commutes with the interaction.
SignalCurve unpostselected_momentum_density(const QubitState& pre, double g,
                                            const MeterState& meter);

// int p f(p) dp / int f(p) dp. Throws UndefinedConditionalState when the total is
// <= kMinSuccessProbability.
double conditional_mean(const SignalCurve& curve);

}  // namespace wvamp
