#pragma once

// Data-parallel inner loops shared by every module: grid reductions, affine
// sine/cosine sweeps over sampled momenta, and the per-shot log-likelihood sums.
//
// Each kernel has a scalar reference implementation (libm + plain loops) and,
// where the host supports it, an AVX2+FMA implementation using in-house
// polynomial sin/cos/log. The active variant is chosen once at startup from
// CPUID and can be overridden with select_isa() or the WVAMP_ISA environment
// variable ("scalar" or "avx2"). Variants agree to a few ulp, not bitwise; a
// given variant is deterministic (fixed reduction order).

#include <cstddef>
#include <span>
#include <string_view>

namespace wvamp::kernels {

enum class Isa { scalar, avx2 };

// Sum of log(f) over the inputs, where f is exactly-zero for `zeros` of them.
// Zero factors contribute nothing to `value`; callers decide how to floor them.
struct LogSum {
    double value = 0.0;
    std::size_t zeros = 0;
};

struct KernelTable {
    Isa isa;
    std::string_view name;
    // y[0]/2 + y[1] + ... + y[n-2] + y[n-1]/2 (caller scales by the spacing).
    double (*trapezoid_sum)(const double* y, std::size_t n);
    // Same weights applied to x[i]^k * y[i].
    double (*trapezoid_moment_sum)(const double* x, const double* y, std::size_t n, int k);
    // s[i], c[i] = sin, cos of (offset + slope * x[i]).
    void (*sincos_affine)(double offset, double slope, const double* x, std::size_t n, double* s,
                          double* c);
    // Sum over i of log(cos^2(shift + phase[i])) and log(sin^2(shift + phase[i])).
    // Compensated summation.
    LogSum (*sum_log_cos_sq)(double shift, const double* phase, std::size_t n);
    LogSum (*sum_log_sin_sq)(double shift, const double* phase, std::size_t n);
};

bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
// Throws InvalidArgument if the requested variant is not supported on this host.
void select_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

const KernelTable& table(Isa isa);
const KernelTable& active() noexcept;

// Convenience wrappers over the active table.
double trapezoid_sum(std::span<const double> y);
double trapezoid_moment_sum(std::span<const double> x, std::span<const double> y, int k);
void sincos_affine(double offset, double slope, std::span<const double> x, std::span<double> s,
                   std::span<double> c);
LogSum sum_log_cos_sq(double shift, std::span<const double> phase);
LogSum sum_log_sin_sq(double shift, std::span<const double> phase);

}  // namespace wvamp::kernels
