#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "wvamp/meter.hpp"
#include "wvamp/signals.hpp"

namespace wvamp {

// Portable shot generator: the 64-bit Mersenne Twister exactly as specified by the
// C++ standard (std::mt19937_64, default parameters, seeded with the 64-bit seed),
// with doubles formed as (x >> 11) * 2^-53 in [0, 1). Every implementation of this
// recipe reproduces the same stream for the same seed.
inline constexpr std::string_view kRngName = "mt19937_64+u53/v1";

class ShotRng {
public:
    explicit ShotRng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// One joint detection event: the port that fired and the momentum reading.
struct ShotSample {
    Port port;
    double p;

    friend bool operator==(const ShotSample&, const ShotSample&) = default;
};

// n i.i.d. shots from the two-port joint distribution. The port is drawn with its
// total probability, then p by inverting that port's trapezoid CDF with linear
// interpolation inside each grid cell. Two uniforms per shot, port first.
// Throws InvalidArgument for n == 0, SamplingError when both ports carry no mass.
std::vector<ShotSample> sample_shots(std::size_t n, double theta_true, double g, double chi,
                                     const MeterState& meter, std::uint64_t seed);

inline constexpr double kLogLikelihoodFloor = -1e300;

struct LogLikelihood {
    double value = 0.0;
    // Some shot had a port factor of exactly zero; value is kLogLikelihoodFloor.
    bool floored = false;
    std::size_t zero_factor_shots = 0;
};

// Per-shot phases prepared once so the likelihood can be evaluated at many theta:
// sum over shots of log((1 +- cos(theta + 2 g p + chi))/2). The theta-independent
// log P_i(p) term is omitted.
class LikelihoodModel {
public:
    LikelihoodModel(std::span<const ShotSample> samples, double g, double chi);

    LogLikelihood operator()(double theta) const;
    std::size_t n_shots() const noexcept { return plus_.size() + minus_.size(); }
    std::size_t n_plus() const noexcept { return plus_.size(); }

private:
    // Half phases g p + chi/2 per port.
    std::vector<double> plus_;
    std::vector<double> minus_;
};

// Throws InvalidArgument for an empty sample list.
LogLikelihood log_likelihood(std::span<const ShotSample> samples, double theta, double g,
                             double chi);

struct SearchWindow {
    double lo;
    double hi;
};

struct MleOptions {
    std::size_t scan_points = 201;
    // Final bracket width for the refinement.
    double tolerance = 1e-10;
    // Central-difference step for the observed information.
    double curvature_step = 1e-5;
};

struct EstimationResult {
    double theta_hat = 0.0;
    double std_error = 0.0;  // (-d^2 l / d theta^2)^{-1/2} at theta_hat
    double loglik = 0.0;
    std::size_t n_shots = 0;
    bool converged = false;
};

// Likelihood scan over the window, then bracketed Brent refinement around the best
// scan point. Not converged when the maximum sits on the window edge, the curvature
// is not negative, or the likelihood is floored at the optimum.
// Throws InvalidArgument for empty samples or an empty window.
EstimationResult mle_theta(std::span<const ShotSample> samples, double g, double chi,
                           SearchWindow window, const MleOptions& options = {});

// The likelihood is 2 pi periodic in theta and, at chi = pi/2, symmetric under
// theta -> pi - theta. A coarse scan over the small-phase branch [-pi/2, pi/2]
// locates theta_0 and the window is [theta_0 - pi/4, theta_0 + pi/4].
inline constexpr std::size_t kCoarseScanPoints = 1001;
SearchWindow default_search_window(std::span<const ShotSample> samples, double g, double chi);

// Per-shot classical Fisher information of the joint (port, p) outcome:
// sum over ports of int (d Pr/d theta)^2 / Pr dp. The integrand is taken as 0 where
// the meter density vanishes and by its limit at isolated zeros of a port factor.
double fisher_information(double theta, double g, double chi, const MeterState& meter);

}  // namespace wvamp
