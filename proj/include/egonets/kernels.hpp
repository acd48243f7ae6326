#pragma once
// Numeric inner-loop kernels: scalar reference implementations plus AVX2
// variants selected once at runtime. Every variant of a kernel computes the
// same quantity; they may differ in summation order, so results agree to
// rounding, not bit-exactly. Set EGONETS_KERNELS=scalar to force the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace egonets::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string_view backend_name();

// Sum of x[0..n).
double sum(const double* x, std::size_t n);

// Sum of (x[i] - mean)^2.
double sum_sq_dev(const double* x, std::size_t n, double mean);

// acc[i] += (col[i] - q)^2 for i in [0, n). Building block for squared
// Euclidean distances over column-major point sets.
void sqdiff_accum(double* acc, const double* col, double q, std::size_t n);

// Scalar reference implementations, exposed for equivalence tests.
namespace detail {
double sum_scalar(const double* x, std::size_t n);
double sum_sq_dev_scalar(const double* x, std::size_t n, double mean);
void sqdiff_accum_scalar(double* acc, const double* col, double q, std::size_t n);
}  // namespace detail

inline double mean(std::span<const double> x) {
    return x.empty() ? 0.0 : sum(x.data(), x.size()) / static_cast<double>(x.size());
}

// Unbiased sample variance (n-1 denominator); 0 for n < 2.
inline double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    return sum_sq_dev(x.data(), x.size(), m) / static_cast<double>(x.size() - 1);
}

}  // namespace egonets::kernels
