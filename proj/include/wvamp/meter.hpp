#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wvamp/grid.hpp"
#include "wvamp/qubit.hpp"

namespace wvamp {

// State of the continuous meter, described in momentum space. Either a pure
// wavefunction phi(p) sampled on a grid (optionally tagged as the analytic
// centred Gaussian of width sigma), or a momentum-diagonal mixed state with
// density P_i(p) = <p|rho|p>.
class MeterState {
public:
    static constexpr double kNormTolerance = 1e-8;

    enum class Kind { pure, diagonal_mixed };

    // Throws InvalidArgument on size mismatch, non-finite samples, or
    // |integral of |phi|^2 - 1| > kNormTolerance.
    static MeterState pure(MomentumGrid grid, std::vector<complex> amplitudes);
    // Throws InvalidArgument on negative/non-finite samples or bad normalization.
    static MeterState diagonal_mixed(MomentumGrid grid, std::vector<double> density);

    Kind kind() const noexcept { return kind_; }
    bool is_pure() const noexcept { return kind_ == Kind::pure; }
    const MomentumGrid& grid() const noexcept { return grid_; }

    // |phi(p)|^2 for pure meters, P_i(p) for mixed ones.
    std::span<const double> momentum_density() const noexcept { return *density_; }
    // Throws RepresentationError for mixed meters.
    std::span<const complex> amplitudes() const;
    // Set only for meters built by gaussian_meter().
    std::optional<double> gaussian_sigma() const noexcept { return sigma_; }

private:
    friend MeterState gaussian_meter(double sigma, const MomentumGrid& grid);

    MeterState(Kind kind, MomentumGrid grid, std::shared_ptr<const std::vector<complex>> amps,
               std::shared_ptr<const std::vector<double>> density, std::optional<double> sigma)
        : kind_(kind),
          grid_(std::move(grid)),
          amplitudes_(std::move(amps)),
          density_(std::move(density)),
          sigma_(sigma) {}

    Kind kind_;
    MomentumGrid grid_;
    std::shared_ptr<const std::vector<complex>> amplitudes_;
    std::shared_ptr<const std::vector<double>> density_;
    std::optional<double> sigma_;
};

// Minimum grid half-width, in units of sigma, accepted by gaussian_meter.
inline constexpr double kGaussianCoverageSigmas = 6.0;

// phi(p) = (2 pi sigma^2)^{-1/4} exp(-p^2 / (4 sigma^2)), so |phi|^2 is the normal
// density of standard deviation sigma. The tabulated samples are not re-checked
// for quadrature normalization (the analytic state is exactly normalized), which
// lets coarse grids be used in convergence studies.
// Throws InvalidArgument for sigma <= 0, DomainCoverageError when the grid does
// not span [-6 sigma, 6 sigma].
MeterState gaussian_meter(double sigma, const MomentumGrid& grid);

// Momentum-diagonal mixed meter with the same density samples (bit for bit) as `meter`.
MeterState diagonal_from(const MeterState& meter);

// Rescales non-negative samples to unit trapezoid integral. Throws InvalidArgument
// for negative/non-finite samples or a zero integral.
std::vector<double> normalize_density(const MomentumGrid& grid, std::vector<double> values);

// Closed forms for the Gaussian meter.
double gaussian_momentum_amplitude(double p, double sigma) noexcept;
double gaussian_momentum_density(double p, double sigma) noexcept;
// Position wavefunction under phi~(q) = (2 pi)^{-1/2} int dp e^{ipq} phi(p):
// (2 sigma^2 / pi)^{1/4} exp(-sigma^2 q^2), position width 1/(2 sigma).
double gaussian_position_amplitude(double q, double sigma) noexcept;

// Direct-quadrature transform of the sampled wavefunction to position space,
// evaluated at q + shift for every q in q_grid. Throws RepresentationError for
// mixed meters.
std::vector<complex> position_wavefunction(const MeterState& meter, const UniformGrid& q_grid,
                                           double shift = 0.0);

}  // namespace wvamp
