#if !defined(__AVX2__) || !defined(__FMA__)
#error "this translation unit must be compiled with -mavx2 -mfma"
#endif

#include <immintrin.h>

#include <cfloat>
#include <cstdint>

#include "variants.hpp"

namespace wvamp::kernels::detail {
namespace {

using v4 = __m256d;

inline v4 splat(double x) { return _mm256_set1_pd(x); }

inline __m256i tail_mask(std::size_t remaining) {
    return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(remaining)),
                              _mm256_setr_epi64x(0, 1, 2, 3));
}

inline double horizontal_sum(v4 v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

struct Reduced {
    v4 r;  // x - j pi/2, |r| <= pi/4
    v4 z;  // r^2
    v4 j;  // nearest integer to x * 2/pi
};

// Reduction by pi/2 against a three-part split of pi/2 (exact products under FMA).
inline Reduced reduce_half_pi(v4 x) {
    const v4 j = _mm256_round_pd(_mm256_mul_pd(x, splat(0x1.45f306dc9c883p-1)),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    v4 r = _mm256_fnmadd_pd(j, splat(0x1.921fb54442d18p0), x);
    r = _mm256_fnmadd_pd(j, splat(0x1.1a62633145c07p-54), r);
    r = _mm256_fnmadd_pd(j, splat(-0x1.f1976b7ed8fbcp-110), r);
    return {r, _mm256_mul_pd(r, r), j};
}

// fdlibm's minimax kernels on [-pi/4, pi/4].
inline v4 sin_kernel(v4 r, v4 z) {
    v4 ps = splat(1.58969099521155010221e-10);
    ps = _mm256_fmadd_pd(ps, z, splat(-2.50507602534068634195e-08));
    ps = _mm256_fmadd_pd(ps, z, splat(2.75573137070700676789e-06));
    ps = _mm256_fmadd_pd(ps, z, splat(-1.98412698298579493134e-04));
    ps = _mm256_fmadd_pd(ps, z, splat(8.33333333332248946124e-03));
    ps = _mm256_fmadd_pd(ps, z, splat(-1.66666666666666324348e-01));
    return _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);
}

inline v4 cos_kernel(v4 z) {
    v4 pc = splat(-1.13596475577881948265e-11);
    pc = _mm256_fmadd_pd(pc, z, splat(2.08757232129817482790e-09));
    pc = _mm256_fmadd_pd(pc, z, splat(-2.75573143513906633035e-07));
    pc = _mm256_fmadd_pd(pc, z, splat(2.48015872894767294178e-05));
    pc = _mm256_fmadd_pd(pc, z, splat(-1.38888888888741095749e-03));
    pc = _mm256_fmadd_pd(pc, z, splat(4.16666666666666019037e-02));
    return _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_fnmadd_pd(splat(0.5), z, splat(1.0)));
}

inline void sincos4(v4 x, v4& s, v4& c) {
    const Reduced red = reduce_half_pi(x);
    const v4 sin_r = sin_kernel(red.r, red.z);
    const v4 cos_r = cos_kernel(red.z);

    // quadrant q = j mod 4 in [0, 4)
    const v4 j = red.j;
    const v4 q = _mm256_fnmadd_pd(splat(4.0), _mm256_floor_pd(_mm256_mul_pd(j, splat(0.25))), j);
    const v4 one = splat(1.0);
    const v4 two = splat(2.0);
    const v4 q_is_1 = _mm256_cmp_pd(q, one, _CMP_EQ_OQ);
    const v4 q_is_2 = _mm256_cmp_pd(q, two, _CMP_EQ_OQ);
    const v4 q_is_3 = _mm256_cmp_pd(q, splat(3.0), _CMP_EQ_OQ);
    const v4 swap = _mm256_or_pd(q_is_1, q_is_3);
    const v4 neg_s = _mm256_cmp_pd(q, two, _CMP_GE_OQ);
    const v4 neg_c = _mm256_or_pd(q_is_1, q_is_2);
    const v4 sign = splat(-0.0);

    s = _mm256_blendv_pd(sin_r, cos_r, swap);
    c = _mm256_blendv_pd(cos_r, sin_r, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign));
}

// cos^2(x) (UseCos) or sin^2(x). Signs drop out, so only quadrant parity matters:
// odd quadrants swap the two kernels. Vectors whose lanes agree on the kernel
// evaluate just that one.
template <bool UseCos>
inline v4 trig_sq4(v4 x) {
    const Reduced red = reduce_half_pi(x);
    const v4 half_j = _mm256_mul_pd(red.j, splat(0.5));
    const v4 odd = _mm256_cmp_pd(_mm256_floor_pd(half_j), half_j, _CMP_NEQ_UQ);
    const v4 use_sin = UseCos ? odd : _mm256_xor_pd(odd, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
    const int m = _mm256_movemask_pd(use_sin);
    v4 t;
    if (m == 0xF) {
        t = sin_kernel(red.r, red.z);
    } else if (m == 0) {
        t = cos_kernel(red.z);
    } else {
        t = _mm256_blendv_pd(cos_kernel(red.z), sin_kernel(red.r, red.z), use_sin);
    }
    return _mm256_mul_pd(t, t);
}

// Natural log for finite x > 0 (subnormals included). fdlibm's reduction
// x = 2^e * m, m in [sqrt(1/2), sqrt(2)), and its degree-14 odd series in s = f/(2+f).
inline v4 log4(v4 x) {
    const v4 tiny = _mm256_cmp_pd(x, splat(DBL_MIN), _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_mul_pd(x, splat(0x1p54)), tiny);
    const v4 e_adjust = _mm256_and_pd(tiny, splat(54.0));

    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    v4 e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic)), splat(0x1p52));
    e = _mm256_sub_pd(e, _mm256_add_pd(splat(1023.0), e_adjust));

    const __m256i mant_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FF0000000000000LL));
    v4 m = _mm256_castsi256_pd(mant_bits);
    const v4 big = _mm256_cmp_pd(m, splat(0x1.6a09e667f3bcdp0), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

    const v4 f = _mm256_sub_pd(m, splat(1.0));
    const v4 s = _mm256_div_pd(f, _mm256_add_pd(splat(2.0), f));
    const v4 z = _mm256_mul_pd(s, s);
    const v4 w = _mm256_mul_pd(z, z);
    v4 t1 = _mm256_fmadd_pd(w, splat(1.531383769920937332e-01), splat(2.222219843214978396e-01));
    t1 = _mm256_fmadd_pd(w, t1, splat(3.999999999940941908e-01));
    t1 = _mm256_mul_pd(w, t1);
    v4 t2 = _mm256_fmadd_pd(w, splat(1.479819860511658591e-01), splat(1.818357216161805012e-01));
    t2 = _mm256_fmadd_pd(w, t2, splat(2.857142874366239149e-01));
    t2 = _mm256_fmadd_pd(w, t2, splat(6.666666666666735130e-01));
    t2 = _mm256_mul_pd(z, t2);
    const v4 R = _mm256_add_pd(t1, t2);
    const v4 hfsq = _mm256_mul_pd(splat(0.5), _mm256_mul_pd(f, f));

    // e*ln2_hi - ((hfsq - (s*(hfsq+R) + e*ln2_lo)) - f)
    const v4 inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R),
                                     _mm256_mul_pd(e, splat(1.90821492927058770002e-10)));
    const v4 corr = _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f);
    return _mm256_fmsub_pd(e, splat(6.93147180369123816490e-01), corr);
}

double trapezoid_sum(const double* y, std::size_t n) {
    if (n < 2) return 0.0;
    v4 acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(y + i));
    if (i < n) acc = _mm256_add_pd(acc, _mm256_maskload_pd(y + i, tail_mask(n - i)));
    return horizontal_sum(acc) - 0.5 * (y[0] + y[n - 1]);
}

inline v4 ipow4(v4 x, int k) {
    v4 r = splat(1.0);
    for (int j = 0; j < k; ++j) r = _mm256_mul_pd(r, x);
    return r;
}

double trapezoid_moment_sum(const double* x, const double* y, std::size_t n, int k) {
    if (n < 2) return 0.0;
    v4 acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(ipow4(_mm256_loadu_pd(x + i), k), _mm256_loadu_pd(y + i), acc);
    }
    if (i < n) {
        const __m256i mask = tail_mask(n - i);
        acc = _mm256_fmadd_pd(ipow4(_mm256_maskload_pd(x + i, mask), k),
                              _mm256_maskload_pd(y + i, mask), acc);
    }
    double xk0 = 1.0, xkn = 1.0;
    for (int j = 0; j < k; ++j) {
        xk0 *= x[0];
        xkn *= x[n - 1];
    }
    return horizontal_sum(acc) - 0.5 * (xk0 * y[0] + xkn * y[n - 1]);
}

void sincos_affine(double offset, double slope, const double* x, std::size_t n, double* s,
                   double* c) {
    const v4 off = splat(offset);
    const v4 k = splat(slope);
    std::size_t i = 0;
    v4 vs, vc;
    for (; i + 4 <= n; i += 4) {
        sincos4(_mm256_add_pd(off, _mm256_mul_pd(k, _mm256_loadu_pd(x + i))), vs, vc);
        _mm256_storeu_pd(s + i, vs);
        _mm256_storeu_pd(c + i, vc);
    }
    if (i < n) {
        const __m256i mask = tail_mask(n - i);
        sincos4(_mm256_add_pd(off, _mm256_mul_pd(k, _mm256_maskload_pd(x + i, mask))), vs, vc);
        _mm256_maskstore_pd(s + i, mask, vs);
        _mm256_maskstore_pd(c + i, mask, vc);
    }
}

template <bool UseCos>
LogSum sum_log_sq(double shift, const double* phase, std::size_t n) {
    const v4 sh = splat(shift);
    const v4 one = splat(1.0);
    v4 sum = _mm256_setzero_pd();
    v4 comp = _mm256_setzero_pd();
    std::size_t zeros = 0;

    auto step = [&](v4 ph, v4 valid) {
        const v4 f = trig_sq4<UseCos>(_mm256_add_pd(sh, ph));
        const v4 is_zero = _mm256_and_pd(_mm256_cmp_pd(f, _mm256_setzero_pd(), _CMP_EQ_OQ), valid);
        zeros += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(is_zero)));
        const v4 use = _mm256_andnot_pd(is_zero, valid);
        const v4 l = _mm256_and_pd(log4(_mm256_blendv_pd(one, f, use)), use);
        const v4 y = _mm256_sub_pd(l, comp);
        const v4 next = _mm256_add_pd(sum, y);
        comp = _mm256_sub_pd(_mm256_sub_pd(next, sum), y);
        sum = next;
    };

    const v4 all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) step(_mm256_loadu_pd(phase + i), all);
    if (i < n) {
        const __m256i mask = tail_mask(n - i);
        step(_mm256_maskload_pd(phase + i, mask), _mm256_castsi256_pd(mask));
    }

    LogSum out;
    out.value = horizontal_sum(_mm256_sub_pd(sum, comp));
    out.zeros = zeros;
    return out;
}

constexpr KernelTable kAvx2{
    Isa::avx2,             "avx2",
    &trapezoid_sum,        &trapezoid_moment_sum,
    &sincos_affine,        &sum_log_sq<true>,
    &sum_log_sq<false>,
};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace wvamp::kernels::detail
