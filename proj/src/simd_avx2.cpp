#include "hawkeslob/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace hawkeslob::simd::avx2 {
namespace {

// Cephes-style exp: x = n*ln2 + r, |r| <= ln2/2, e^r from a (3,3) Pade form, 2^n from the
// exponent bits. Inputs below kMinArg flush to 0.
constexpr double kMaxArg = 709.78;
constexpr double kMinArg = -708.39;

inline __m256d exp_pd(__m256d x) {
    const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(kMinArg), _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(kMinArg)), _mm256_set1_pd(kMaxArg));

    const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(6.93145751953125E-1), x);
    x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(1.42860682030941723212E-6), x);

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d px = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx,
                                 _mm256_set1_pd(3.02994407707441961300E-2));
    px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(9.99999999999999999910E-1));
    px = _mm256_mul_pd(px, x);

    __m256d qx = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx,
                                 _mm256_set1_pd(2.52448340349684104192E-3));
    qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766E-1));
    qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000009E0));

    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

    const __m128i n32 = _mm256_cvtpd_epi32(fx);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    n64 = _mm256_slli_epi64(n64, 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(n64));
    return _mm256_andnot_pd(underflow, e);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void exp_inplace(std::span<double> x) {
    std::size_t k = 0;
    for (; k + 4 <= x.size(); k += 4) {
        _mm256_storeu_pd(x.data() + k, exp_pd(_mm256_loadu_pd(x.data() + k)));
    }
    for (; k < x.size(); ++k) x[k] = std::exp(x[k]);
}

double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay, double t) {
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d vneg = _mm256_set1_pd(-decay);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc0 = zero;
    __m256d acc1 = zero;
    std::size_t k = 0;
    const std::size_t n = times.size();
    for (; k + 8 <= n; k += 8) {
        const __m256d d0 = _mm256_max_pd(_mm256_sub_pd(vt, _mm256_loadu_pd(times.data() + k)), zero);
        const __m256d d1 = _mm256_max_pd(_mm256_sub_pd(vt, _mm256_loadu_pd(times.data() + k + 4)), zero);
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(weights.data() + k), exp_pd(_mm256_mul_pd(vneg, d0)), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(weights.data() + k + 4), exp_pd(_mm256_mul_pd(vneg, d1)), acc1);
    }
    for (; k + 4 <= n; k += 4) {
        const __m256d d0 = _mm256_max_pd(_mm256_sub_pd(vt, _mm256_loadu_pd(times.data() + k)), zero);
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(weights.data() + k), exp_pd(_mm256_mul_pd(vneg, d0)), acc0);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) {
        sum += weights[k] * std::exp(-decay * std::max(t - times[k], 0.0));
    }
    return sum;
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    const std::size_t n = a.size();
    for (; k + 8 <= n; k += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a.data() + k + 4), _mm256_loadu_pd(b.data() + k + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

double sum_prod_diff(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
                     std::span<const double> b2) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    const std::size_t n = a1.size();
    for (; k + 4 <= n; k += 4) {
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a1.data() + k), _mm256_loadu_pd(b1.data() + k));
        const __m256d d2 = _mm256_sub_pd(_mm256_loadu_pd(a2.data() + k), _mm256_loadu_pd(b2.data() + k));
        acc = _mm256_fmadd_pd(d1, d2, acc);
    }
    double sum = hsum(acc);
    for (; k < n; ++k) sum += (a1[k] - b1[k]) * (a2[k] - b2[k]);
    return sum;
}

} // namespace hawkeslob::simd::avx2
