#include "dta/simd/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace dta::simd {

namespace {

struct KernelTable {
    Backend backend;
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    double (*sum)(const double*, std::size_t);
};

constexpr KernelTable kScalarTable = {
    Backend::scalar, scalar::axpy, scalar::dot, scalar::squared_distance,
    scalar::scale, scalar::sum,
};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table = {
    Backend::avx2, avx2::axpy, avx2::dot, avx2::squared_distance,
    avx2::scale, avx2::sum,
};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeonTable = {
    Backend::neon, neon::axpy, neon::dot, neon::squared_distance,
    neon::scale, neon::sum,
};
#endif

KernelTable resolve() {
    const char* req = std::getenv("DTA_SIMD");
    const bool want_scalar = req && std::strcmp(req, "scalar") == 0;
#if defined(__x86_64__) || defined(_M_X64)
    const bool want_avx2 = !req || std::strcmp(req, "avx2") == 0;
    if (!want_scalar && want_avx2 && avx2::supported()) return kAvx2Table;
#endif
#if defined(__aarch64__)
    const bool want_neon = !req || std::strcmp(req, "neon") == 0;
    if (!want_scalar && want_neon && neon::supported()) return kNeonTable;
#endif
    return kScalarTable;
}

const KernelTable& table() {
    static const KernelTable t = resolve();
    return t;
}

}  // namespace

Backend active_backend() { return table().backend; }

const char* backend_name() {
    switch (table().backend) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
double squared_distance(const double* x, const double* y, std::size_t n) {
    return table().squared_distance(x, y, n);
}
void scale(double* x, double a, std::size_t n) { table().scale(x, a, n); }
double sum(const double* x, std::size_t n) { return table().sum(x, n); }

}  // namespace dta::simd
