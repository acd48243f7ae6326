#include "egonets/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace egonets::kernels {

namespace detail {

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double mean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        acc += d * d;
    }
    return acc;
}

void sqdiff_accum_scalar(double* acc, const double* col, double q, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = col[i] - q;
        acc[i] += d * d;
    }
}

#if defined(__x86_64__)
double sum_avx2(const double* x, std::size_t n);
double sum_sq_dev_avx2(const double* x, std::size_t n, double mean);
void sqdiff_accum_avx2(double* acc, const double* col, double q, std::size_t n);
#endif

}  // namespace detail

namespace {

struct KernelTable {
    Backend backend;
    double (*sum)(const double*, std::size_t);
    double (*sum_sq_dev)(const double*, std::size_t, double);
    void (*sqdiff_accum)(double*, const double*, double, std::size_t);
};

constexpr KernelTable kScalarTable{
    Backend::scalar,
    detail::sum_scalar,
    detail::sum_sq_dev_scalar,
    detail::sqdiff_accum_scalar,
};

KernelTable select_table() {
    if (const char* force = std::getenv("EGONETS_KERNELS")) {
        if (std::strcmp(force, "scalar") == 0) return kScalarTable;
    }
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return KernelTable{Backend::avx2, detail::sum_avx2, detail::sum_sq_dev_avx2,
                           detail::sqdiff_accum_avx2};
    }
#endif
    return kScalarTable;
}

const KernelTable& table() {
    static const KernelTable t = select_table();
    return t;
}

}  // namespace

Backend active_backend() { return table().backend; }

std::string_view backend_name() {
    switch (table().backend) {
        case Backend::avx2: return "avx2";
        case Backend::scalar: break;
    }
    return "scalar";
}

double sum(const double* x, std::size_t n) { return table().sum(x, n); }

double sum_sq_dev(const double* x, std::size_t n, double mean) {
    return table().sum_sq_dev(x, n, mean);
}

void sqdiff_accum(double* acc, const double* col, double q, std::size_t n) {
    table().sqdiff_accum(acc, col, q, n);
}

}  // namespace egonets::kernels
