#pragma once

#include <cstddef>

// Vector kernels behind the dense linear algebra.  Every kernel has a scalar
// reference implementation plus ISA-specific variants (AVX2 on x86-64, NEON
// on aarch64) compiled only on the matching architecture and selected once at
// runtime.  The variants must agree with the reference to floating-point
// roundoff; see tests/test_simd.cpp.

namespace dta::simd {

enum class Backend { scalar, avx2, neon };

// Backend chosen for this process.  Resolution order: the DTA_SIMD
// environment variable ("scalar", "avx2", "neon") if set and supported,
// otherwise the widest ISA the CPU reports.
Backend active_backend();
const char* backend_name();

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);
// sum_i (x[i] - y[i])^2
double squared_distance(const double* x, const double* y, std::size_t n);
// x[i] *= a
void scale(double* x, double a, std::size_t n);
// sum_i x[i]
double sum(const double* x, std::size_t n);

// Reference kernels, always available regardless of the active backend.
namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double squared_distance(const double* x, const double* y, std::size_t n);
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double squared_distance(const double* x, const double* y, std::size_t n);
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported();
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double squared_distance(const double* x, const double* y, std::size_t n);
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace neon
#endif

}  // namespace dta::simd
