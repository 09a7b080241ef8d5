#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dta {

using Index = std::ptrdiff_t;

// Dense row-major matrix of doubles.  Rows are contiguous so they can be
// handed straight to the vector kernels.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {
        assert(rows >= 0 && cols >= 0);
    }

    static Matrix identity(Index n) {
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(Index i, Index j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i * cols_ + j)];
    }
    double operator()(Index i, Index j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i * cols_ + j)];
    }

    double* row(Index i) { return data_.data() + i * cols_; }
    const double* row(Index i) const { return data_.data() + i * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

// c = a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// c = a * b^T; cheaper than transposing when both operands are row-major
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace dta
