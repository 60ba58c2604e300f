#pragma once

#include <vector>

#include "wvamp/grid.hpp"
#include "wvamp/meter.hpp"

namespace wvamp {

// Output port of the chi-parameterized postselection pair. `plus` projects on
// (|0> + e^{i chi}|1>)/sqrt(2) and carries +cos(theta + 2gp + chi); at chi = 0 the
// minus port is the dark port and plus the bright port, at chi = pi/2 the plus
// port gives (1 - sin(theta + 2gp))/2.
enum class Port { plus, minus };

const char* port_name(Port port) noexcept;

// Closed-form per-momentum factors, for oracles and the likelihood.
// (1 +- cos(theta + 2gp + chi))/2, evaluated as cos^2 / sin^2 of the half angle.
double port_factor(double theta, double g, double chi, Port port, double p) noexcept;
// (1 - cos(theta + 2gp)) cos(chi) + sin(theta + 2gp) sin(chi)
double general_factor(double theta, double g, double chi, double p) noexcept;

// Pr_+-(p) = (1 +- cos(theta + 2gp + chi))/2 * P_i(p), P_i the meter's momentum density.
SignalCurve port_distribution(double theta, double g, double chi, Port port,
                              const MeterState& meter);

struct PortPair {
    SignalCurve plus;
    SignalCurve minus;
};
PortPair port_distributions(double theta, double g, double chi, const MeterState& meter);

// Pr_+ + Pr_-; equals P_i.
SignalCurve sum_signal(double theta, double g, double chi, const MeterState& meter);
// -(Pr_+ - Pr_-) = -cos(theta + 2gp + chi) P_i; sin(theta + 2gp) P_i at chi = pi/2.
SignalCurve difference_signal(double theta, double g, double chi, const MeterState& meter);
// ((1 - cos(theta + 2gp)) cos chi + sin(theta + 2gp) sin chi) P_i, which is
// cos(chi) (Pr_+ + Pr_-) - (Pr_+ - Pr_-).
SignalCurve general_signal(double theta, double g, double chi, const MeterState& meter);

struct SignalSet {
    SignalCurve plus;
    SignalCurve minus;
    SignalCurve sum;
    SignalCurve difference;
    SignalCurve general;
};
SignalSet all_signals(double theta, double g, double chi, const MeterState& meter);

// Momenta p_k = (2 k pi - theta - chi) / (2g) inside the grid range, ascending: the
// zeros of the minus port. Throws NoZerosDefined when g == 0.
std::vector<double> detection_zeros(double theta, double g, double chi, const MomentumGrid& grid);

}  // namespace wvamp
