#pragma once

#include <vector>

#include "dta/matrix.hpp"

namespace dta {

// Projects every domain-1 point into domain-2 coordinates as the plan-weighted
// average of targets: rows of the normalised plan are rescaled to sum to one
// before averaging.  Rows without any mass produce a zero row and a false
// entry in the mask (if requested).
Matrix barycentric_project(const Matrix& tnorm, const Matrix& y,
                           std::vector<bool>* transported_mask = nullptr);

// Cross-domain affinity: w1 * tnorm + tnorm * w2.
Matrix cross_similarity(const Matrix& w1, const Matrix& tnorm, const Matrix& w2);

// Symmetric block affinity over the union of both domains:
//   [ mu*w1              (1-mu)*w12 ]
//   [ (1-mu)*w12^T       mu*w2      ]
struct JointAffinity {
    Matrix w;
    Index n1;  // rows 0..n1-1 belong to domain 1
};
JointAffinity joint_affinity(const Matrix& w1, const Matrix& w2, const Matrix& w12, double mu);

enum class LaplacianVariant { random_walk, unnormalized };

struct Embedding {
    Matrix coords;                    // one row per point, d columns
    std::vector<double> eigenvalues;  // ascending, trivial eigenvalue excluded
    Index n1 = 0;                     // domain split for joint embeddings
};

// Embedding by the d smallest non-trivial eigenvectors of the graph
// Laplacian (random-walk I - Deg^-1 W by default).  The affinity must be
// symmetric and connected; a split graph raises DisconnectedGraphError with
// the component sizes.  Each eigenvector is unit length with its first
// non-negligible coordinate positive, so results are sign-deterministic.
Embedding spectral_embedding(const Matrix& w, Index d,
                             LaplacianVariant variant = LaplacianVariant::random_walk);

// spectral_embedding of the joint affinity, keeping the domain split.
Embedding joint_embedding(const JointAffinity& joint, Index d,
                          LaplacianVariant variant = LaplacianVariant::random_walk);

}  // namespace dta
