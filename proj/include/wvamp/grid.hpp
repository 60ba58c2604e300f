#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace wvamp {

// Uniform 1-D sampling of a real axis. Used for momentum everywhere and, inside
// meter_evolution, for position samples as well.
//
// Points are p_i = (p_min*(n-1-i) + p_max*i)/(n-1), so both endpoints are exact
// and a grid with p_min = -p_max is exactly mirror-symmetric (p = 0 on-grid for
// odd n).
class UniformGrid {
public:
    UniformGrid(double p_min, double p_max, std::size_t n_points);

    static UniformGrid symmetric(double half_width, std::size_t n_points) {
        return UniformGrid(-half_width, half_width, n_points);
    }

    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return points_->size(); }
    double operator[](std::size_t i) const noexcept { return (*points_)[i]; }
    std::span<const double> points() const noexcept { return *points_; }

    // Index of the grid point closest to x (clamped to the range).
    std::size_t nearest_index(double x) const noexcept;
    bool contains(double x) const noexcept { return x >= min_ && x <= max_; }

    friend bool operator==(const UniformGrid& a, const UniformGrid& b) noexcept {
        return a.min_ == b.min_ && a.max_ == b.max_ && a.size() == b.size();
    }

private:
    double min_;
    double max_;
    double spacing_;
    std::shared_ptr<const std::vector<double>> points_;
};

using MomentumGrid = UniformGrid;

// Default sampling for a meter of momentum width sigma: [-10 sigma, 10 sigma], 4001 points.
inline constexpr double kDefaultGridHalfWidthSigmas = 10.0;
inline constexpr std::size_t kDefaultGridPoints = 4001;
MomentumGrid default_grid(double sigma);

// Trapezoid rule on the grid.
double integrate(const UniformGrid& grid, std::span<const double> values);
// Trapezoid rule applied to x^k * values(x).
double moment(const UniformGrid& grid, std::span<const double> values, int k);

// Signed real samples on a grid, with the trapezoid integral cached.
class SignalCurve {
public:
    SignalCurve(MomentumGrid grid, std::vector<double> values);

    const MomentumGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    double total() const noexcept { return total_; }

    // max |value| and the grid point where it is attained (first on ties).
    double peak_abs() const noexcept;
    double peak_location() const noexcept;

private:
    MomentumGrid grid_;
    std::vector<double> values_;
    double total_;
};

double integrate(const SignalCurve& curve);
double moment(const SignalCurve& curve, int k);

}  // namespace wvamp
