#pragma once

#include <vector>

#include "dta/matrix.hpp"

namespace dta {

// Graph/diffusion parameters shared across the pipeline.
struct KernelConfig {
    int k = 10;          // neighbour rank used for the adaptive bandwidth
    double alpha = 10.0; // kernel decay exponent
    int t = 10;          // diffusion steps
    double mu = 0.5;     // intra- vs. cross-domain weight in the joint affinity

    // Throws BadShapesError unless 1 <= k < n, alpha > 0, t >= 1, mu in [0,1].
    void validate(Index n) const;
};

// Euclidean distance matrix, d(i,j) = ||x_i - x_j||.
Matrix pairwise_distances(const Matrix& x);

// sigma_i = distance from x_i to its k-th nearest neighbour, self excluded.
// A zero bandwidth (k-th neighbour coincides with the point) raises
// DegenerateBandwidthError naming the first offending index.
std::vector<double> knn_bandwidths(const Matrix& dist, int k);
std::vector<double> knn_bandwidths_points(const Matrix& x, int k);

// Symmetric decay kernel with per-point bandwidths:
//   K(i,j) = exp(-(d_ij/sigma_i)^alpha)/2 + exp(-(d_ij/sigma_j)^alpha)/2
// The diagonal is exactly 1.
Matrix decay_kernel(const Matrix& dist, const std::vector<double>& sigma, double alpha);
Matrix decay_kernel_points(const Matrix& x, const KernelConfig& config);

// P = diag(row sums)^-1 K.  Row sums must be positive.
Matrix row_normalize(const Matrix& k);

// P^steps.  Sequential products for small exponents, square-and-multiply
// beyond 8 steps; the two schedules agree to 1e-10 (tested).
Matrix diffuse(const Matrix& p, int steps);

// Convenience: points -> kernel -> row-normalised diffusion operator.
Matrix diffusion_operator(const Matrix& x, const KernelConfig& config);

}  // namespace dta
