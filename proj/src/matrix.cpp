#include "dta/matrix.hpp"

#include <cmath>

#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw BadShapesError("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    // i-k-j order: every partial product is an axpy over contiguous rows.
    for (Index i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (Index k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik != 0.0)
                simd::axpy(aik, b.row(k), ci, static_cast<std::size_t>(b.cols()));
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw BadShapesError("matmul_nt: inner dimensions differ");
    Matrix c(a.rows(), b.rows());
    const auto n = static_cast<std::size_t>(a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.rows(); ++j)
            c(i, j) = simd::dot(a.row(i), b.row(j), n);
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    const double* p = m.data();
    const std::size_t n = static_cast<std::size_t>(m.rows() * m.cols());
    for (std::size_t i = 0; i < n; ++i) v = std::max(v, std::fabs(p[i]));
    return v;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw BadShapesError("max_abs_diff: shapes differ");
    double v = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = static_cast<std::size_t>(a.rows() * a.cols());
    for (std::size_t i = 0; i < n; ++i) v = std::max(v, std::fabs(pa[i] - pb[i]));
    return v;
}

}  // namespace dta
