#pragma once

#include <complex>

namespace wvamp {

using complex = std::complex<double>;

// Normalized state of the measured two-level system, c0|0> + c1|1>.
class QubitState {
public:
    static constexpr double kNormTolerance = 1e-12;

    // Throws InvalidArgument unless |c0|^2 + |c1|^2 = 1 within kNormTolerance.
    QubitState(complex c0, complex c1);

    static QubitState zero() { return {1.0, 0.0}; }
    static QubitState one() { return {0.0, 1.0}; }

    complex c0() const noexcept { return c0_; }
    complex c1() const noexcept { return c1_; }
    double norm_squared() const noexcept { return std::norm(c0_) + std::norm(c1_); }

    // Same state times e^{i phase}.
    QubitState with_global_phase(double phase) const;

private:
    complex c0_;
    complex c1_;
};

// <a|b>, conjugating a.
complex inner(const QubitState& bra, const QubitState& ket) noexcept;

// (e^{i theta}|0> + |1>)/sqrt(2): imaginary-weak-value preselection.
QubitState make_preselection_phase(double theta);

// (t|0> + r|1>)/sqrt(2) with t - r = delta, t^2 + r^2 = 2, t > 0: real-weak-value
// preselection. Requires |delta| < 2.
struct RealPreselection {
    QubitState state;
    double t;
    double r;
};
RealPreselection make_preselection_real(double delta);

// Orthogonal postselection pair (|0> +- e^{i chi}|1>)/sqrt(2). chi outside [0, pi/2]
// is accepted and reported through chi_out_of_range.
struct PostselectionPair {
    QubitState plus;
    QubitState minus;
    bool chi_out_of_range;
};
PostselectionPair make_postselection_pair(double chi);

// Named members of the family: dark = (|0>-|1>)/sqrt(2), bright = (|0>+|1>)/sqrt(2).
QubitState dark_port();
QubitState bright_port();

}  // namespace wvamp
