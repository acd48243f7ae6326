// AVX2 + FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86_64 only; callers reach it through the runtime
// dispatch table, which checks cpuid first.
#if defined(__x86_64__)

#include <immintrin.h>

#include <cstddef>

namespace egonets::kernels::detail {

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s2 = _mm_add_pd(lo, hi);
    __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    double total = _mm_cvtsd_f64(s1);
    for (; i < n; ++i) total += x[i];
    return total;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double mean) {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), m);
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s2 = _mm_add_pd(lo, hi);
    __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    double total = _mm_cvtsd_f64(s1);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        total += d * d;
    }
    return total;
}

void sqdiff_accum_avx2(double* acc, const double* col, double q, std::size_t n) {
    const __m256d qv = _mm256_set1_pd(q);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(col + i), qv);
        const __m256d a = _mm256_loadu_pd(acc + i);
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(d, d, a));
    }
    for (; i < n; ++i) {
        const double d = col[i] - q;
        acc[i] += d * d;
    }
}

}  // namespace egonets::kernels::detail

#endif  // __x86_64__
