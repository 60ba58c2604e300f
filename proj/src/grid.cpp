#include "wvamp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wvamp/errors.hpp"
#include "wvamp/kernels.hpp"

namespace wvamp {

UniformGrid::UniformGrid(double p_min, double p_max, std::size_t n_points)
    : min_(p_min), max_(p_max), spacing_(0.0) {
    if (!std::isfinite(p_min) || !std::isfinite(p_max)) {
        throw InvalidArgument("grid bounds must be finite");
    }
    if (!(p_min < p_max)) throw InvalidArgument("grid requires p_min < p_max");
    if (n_points < 3) throw InvalidArgument("grid requires at least 3 points");

    const double last = static_cast<double>(n_points - 1);
    spacing_ = (p_max - p_min) / last;
    std::vector<double> pts(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double k = static_cast<double>(i);
        pts[i] = (p_min * (last - k) + p_max * k) / last;
    }
    points_ = std::make_shared<const std::vector<double>>(std::move(pts));
}

std::size_t UniformGrid::nearest_index(double x) const noexcept {
    if (!(x > min_)) return 0;
    if (!(x < max_)) return size() - 1;
    const auto i = static_cast<std::size_t>(std::lround((x - min_) / spacing_));
    return std::min(i, size() - 1);
}

MomentumGrid default_grid(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
    return MomentumGrid::symmetric(kDefaultGridHalfWidthSigmas * sigma, kDefaultGridPoints);
}

double integrate(const UniformGrid& grid, std::span<const double> values) {
    if (values.size() != grid.size()) throw InvalidArgument("integrate: size mismatch");
    return grid.spacing() * kernels::trapezoid_sum(values);
}

double moment(const UniformGrid& grid, std::span<const double> values, int k) {
    if (values.size() != grid.size()) throw InvalidArgument("moment: size mismatch");
    if (k < 0) throw InvalidArgument("moment order must be non-negative");
    return grid.spacing() * kernels::trapezoid_moment_sum(grid.points(), values, k);
}

SignalCurve::SignalCurve(MomentumGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)), total_(0.0) {
    if (values_.size() != grid_.size()) {
        throw InvalidArgument("signal curve has " + std::to_string(values_.size()) +
                              " samples for a grid of " + std::to_string(grid_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("signal curve values must be finite");
    }
    total_ = integrate(grid_, values_);
}

double SignalCurve::peak_abs() const noexcept {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
}

double SignalCurve::peak_location() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (std::abs(values_[i]) > std::abs(values_[best])) best = i;
    }
    return grid_[best];
}

double integrate(const SignalCurve& curve) { return integrate(curve.grid(), curve.values()); }

double moment(const SignalCurve& curve, int k) { return moment(curve.grid(), curve.values(), k); }

}  // namespace wvamp
