#include "dta/kernel_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

void KernelConfig::validate(Index n) const {
    if (k < 1 || k >= n)
        throw BadShapesError("kernel config: k must satisfy 1 <= k < n, got k=" +
                             std::to_string(k) + " with n=" + std::to_string(n));
    if (!(alpha > 0.0))
        throw BadShapesError("kernel config: alpha must be positive");
    if (t < 1)
        throw BadShapesError("kernel config: t must be at least 1");
    if (!(mu >= 0.0 && mu <= 1.0))
        throw BadShapesError("kernel config: mu must lie in [0, 1]");
}

Matrix pairwise_distances(const Matrix& x) {
    const Index n = x.rows();
    const auto dim = static_cast<std::size_t>(x.cols());
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double v = std::sqrt(simd::squared_distance(x.row(i), x.row(j), dim));
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

std::vector<double> knn_bandwidths(const Matrix& dist, int k) {
    const Index n = dist.rows();
    if (dist.cols() != n) throw BadShapesError("knn_bandwidths: distance matrix must be square");
    if (k < 1 || k >= n)
        throw BadShapesError("knn_bandwidths: k must satisfy 1 <= k < n");
    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<double> buf(static_cast<std::size_t>(n - 1));
    for (Index i = 0; i < n; ++i) {
        std::size_t w = 0;
        for (Index j = 0; j < n; ++j)
            if (j != i) buf[w++] = dist(i, j);
        // k-th nearest neighbour, self excluded
        std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
        const double s = buf[static_cast<std::size_t>(k - 1)];
        if (!(s > 0.0))
            throw DegenerateBandwidthError(
                i, "knn_bandwidths: zero bandwidth at point " + std::to_string(i) +
                       " (k-th neighbour coincides with it); deduplicate the input or raise k");
        sigma[static_cast<std::size_t>(i)] = s;
    }
    return sigma;
}

std::vector<double> knn_bandwidths_points(const Matrix& x, int k) {
    return knn_bandwidths(pairwise_distances(x), k);
}

Matrix decay_kernel(const Matrix& dist, const std::vector<double>& sigma, double alpha) {
    const Index n = dist.rows();
    if (dist.cols() != n) throw BadShapesError("decay_kernel: distance matrix must be square");
    if (static_cast<Index>(sigma.size()) != n)
        throw BadShapesError("decay_kernel: bandwidth count does not match matrix size");
    if (!(alpha > 0.0)) throw BadShapesError("decay_kernel: alpha must be positive");
    Matrix k(n, n);
    for (Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Index j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            const double a = std::exp(-std::pow(d / sigma[static_cast<std::size_t>(i)], alpha));
            const double b = std::exp(-std::pow(d / sigma[static_cast<std::size_t>(j)], alpha));
            const double v = 0.5 * a + 0.5 * b;
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Matrix decay_kernel_points(const Matrix& x, const KernelConfig& config) {
    config.validate(x.rows());
    const Matrix d = pairwise_distances(x);
    return decay_kernel(d, knn_bandwidths(d, config.k), config.alpha);
}

Matrix row_normalize(const Matrix& k) {
    Matrix p = k;
    for (Index i = 0; i < p.rows(); ++i) {
        const double s = simd::sum(p.row(i), static_cast<std::size_t>(p.cols()));
        if (!(s > 0.0))
            throw Error("row_normalize: row " + std::to_string(i) + " has non-positive sum");
        simd::scale(p.row(i), 1.0 / s, static_cast<std::size_t>(p.cols()));
    }
    return p;
}

Matrix diffuse(const Matrix& p, int steps) {
    if (p.rows() != p.cols()) throw BadShapesError("diffuse: operator must be square");
    if (steps < 1) throw BadShapesError("diffuse: steps must be at least 1");
    if (steps <= 8) {
        Matrix out = p;
        for (int s = 1; s < steps; ++s) out = matmul(out, p);
        return out;
    }
    // square-and-multiply
    Matrix result = Matrix::identity(p.rows());
    Matrix base = p;
    int e = steps;
    bool have = false;
    while (e > 0) {
        if (e & 1) {
            result = have ? matmul(result, base) : base;
            have = true;
        }
        e >>= 1;
        if (e > 0) base = matmul(base, base);
    }
    return result;
}

Matrix diffusion_operator(const Matrix& x, const KernelConfig& config) {
    config.validate(x.rows());
    return diffuse(row_normalize(decay_kernel_points(x, config)), config.t);
}

}  // namespace dta
