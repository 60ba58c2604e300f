#include <cmath>

#include "variants.hpp"

namespace wvamp::kernels::detail {
namespace {

double trapezoid_sum(const double* y, std::size_t n) {
    if (n < 2) return 0.0;
    double acc = 0.5 * (y[0] + y[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) acc += y[i];
    return acc;
}

double ipow(double x, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= x;
    return r;
}

double trapezoid_moment_sum(const double* x, const double* y, std::size_t n, int k) {
    if (n < 2) return 0.0;
    double acc = 0.5 * (ipow(x[0], k) * y[0] + ipow(x[n - 1], k) * y[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) acc += ipow(x[i], k) * y[i];
    return acc;
}

void sincos_affine(double offset, double slope, const double* x, std::size_t n, double* s,
                   double* c) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = offset + slope * x[i];
        s[i] = std::sin(a);
        c[i] = std::cos(a);
    }
}

template <bool UseCos>
LogSum sum_log_sq(double shift, const double* phase, std::size_t n) {
    LogSum out;
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = shift + phase[i];
        const double t = UseCos ? std::cos(a) : std::sin(a);
        const double f = t * t;
        if (f == 0.0) {
            ++out.zeros;
            continue;
        }
        // Kahan
        const double y = std::log(f) - comp;
        const double next = sum + y;
        comp = (next - sum) - y;
        sum = next;
    }
    out.value = sum;
    return out;
}

constexpr KernelTable kScalar{
    Isa::scalar,           "scalar",
    &trapezoid_sum,        &trapezoid_moment_sum,
    &sincos_affine,        &sum_log_sq<true>,
    &sum_log_sq<false>,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace wvamp::kernels::detail
