#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "variants.hpp"
#include "wvamp/errors.hpp"

namespace wvamp::kernels {
namespace detail {
#if !defined(WVAMP_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool host_has_avx2() noexcept {
#if defined(WVAMP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const bool avx2 = host_has_avx2();
    if (const char* env = std::getenv("WVAMP_ISA")) {
        const std::string_view want(env);
        if (want == "scalar") return &detail::scalar_table();
        if (want == "avx2" && avx2) return detail::avx2_table();
    }
    return avx2 ? detail::avx2_table() : &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
            return host_has_avx2();
    }
    return false;
}

Isa active_isa() noexcept { return active().isa; }

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

const KernelTable& table(Isa isa) {
    if (!isa_available(isa)) {
        throw InvalidArgument("kernel variant '" + std::string(isa_name(isa)) +
                              "' is not supported on this host");
    }
    return isa == Isa::avx2 ? *detail::avx2_table() : detail::scalar_table();
}

void select_isa(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

double trapezoid_sum(std::span<const double> y) { return active().trapezoid_sum(y.data(), y.size()); }

double trapezoid_moment_sum(std::span<const double> x, std::span<const double> y, int k) {
    if (x.size() != y.size()) throw InvalidArgument("trapezoid_moment_sum: size mismatch");
    return active().trapezoid_moment_sum(x.data(), y.data(), y.size(), k);
}

void sincos_affine(double offset, double slope, std::span<const double> x, std::span<double> s,
                   std::span<double> c) {
    if (s.size() != x.size() || c.size() != x.size()) {
        throw InvalidArgument("sincos_affine: size mismatch");
    }
    active().sincos_affine(offset, slope, x.data(), x.size(), s.data(), c.data());
}

LogSum sum_log_cos_sq(double shift, std::span<const double> phase) {
    return active().sum_log_cos_sq(shift, phase.data(), phase.size());
}

LogSum sum_log_sin_sq(double shift, std::span<const double> phase) {
    return active().sum_log_sin_sq(shift, phase.data(), phase.size());
}

}  // namespace wvamp::kernels
