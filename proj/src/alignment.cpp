#include "dta/alignment.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

Matrix barycentric_project(const Matrix& tnorm, const Matrix& y,
                           std::vector<bool>* transported_mask) {
    if (tnorm.cols() != y.rows())
        throw BadShapesError("barycentric_project: plan columns do not match target rows");
    const Index n = tnorm.rows();
    const Index p = y.cols();
    Matrix proj(n, p);
    if (transported_mask) transported_mask->assign(static_cast<std::size_t>(n), false);
    for (Index i = 0; i < n; ++i) {
        const double s = simd::sum(tnorm.row(i), static_cast<std::size_t>(tnorm.cols()));
        if (!(s > 0.0)) continue;  // untransported point, leave the zero row
        if (transported_mask) (*transported_mask)[static_cast<std::size_t>(i)] = true;
        const double inv = 1.0 / s;
        for (Index j = 0; j < tnorm.cols(); ++j) {
            const double w = tnorm(i, j) * inv;
            if (w != 0.0) simd::axpy(w, y.row(j), proj.row(i), static_cast<std::size_t>(p));
        }
    }
    return proj;
}

Matrix cross_similarity(const Matrix& w1, const Matrix& tnorm, const Matrix& w2) {
    if (w1.rows() != w1.cols() || w2.rows() != w2.cols())
        throw BadShapesError("cross_similarity: intra-domain affinities must be square");
    if (tnorm.rows() != w1.rows() || tnorm.cols() != w2.rows())
        throw BadShapesError("cross_similarity: plan shape does not match the affinities");
    Matrix a = matmul(w1, tnorm);
    const Matrix b = matmul(tnorm, w2);
    for (Index i = 0; i < a.rows(); ++i)
        simd::axpy(1.0, b.row(i), a.row(i), static_cast<std::size_t>(a.cols()));
    return a;
}

JointAffinity joint_affinity(const Matrix& w1, const Matrix& w2, const Matrix& w12, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw BadShapesError("joint_affinity: mu must lie in [0, 1]");
    if (w1.rows() != w1.cols() || w2.rows() != w2.cols())
        throw BadShapesError("joint_affinity: diagonal blocks must be square");
    const Index n = w1.rows();
    const Index m = w2.rows();
    if (w12.rows() != n || w12.cols() != m)
        throw BadShapesError("joint_affinity: cross block must be n x m");
    JointAffinity joint{Matrix(n + m, n + m), n};
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) joint.w(i, j) = mu * w1(i, j);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) joint.w(n + i, n + j) = mu * w2(i, j);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) {
            const double v = (1.0 - mu) * w12(i, j);
            joint.w(i, n + j) = v;
            joint.w(n + j, i) = v;
        }
    return joint;
}

namespace {

// Connected components over the positive entries of w.
std::vector<Index> component_sizes(const Matrix& w) {
    const Index n = w.rows();
    std::vector<Index> comp(static_cast<std::size_t>(n), -1);
    std::vector<Index> sizes;
    std::vector<Index> stack;
    for (Index seed = 0; seed < n; ++seed) {
        if (comp[static_cast<std::size_t>(seed)] >= 0) continue;
        const Index id = static_cast<Index>(sizes.size());
        sizes.push_back(0);
        stack.push_back(seed);
        comp[static_cast<std::size_t>(seed)] = id;
        while (!stack.empty()) {
            const Index x = stack.back();
            stack.pop_back();
            ++sizes[static_cast<std::size_t>(id)];
            for (Index j = 0; j < n; ++j) {
                if (j != x && w(x, j) > 0.0 && comp[static_cast<std::size_t>(j)] < 0) {
                    comp[static_cast<std::size_t>(j)] = id;
                    stack.push_back(j);
                }
            }
        }
    }
    return sizes;
}

void fix_sign(double* v, Index n) {
    double peak = 0.0;
    for (Index i = 0; i < n; ++i) peak = std::max(peak, std::fabs(v[i]));
    if (peak <= 0.0) return;
    for (Index i = 0; i < n; ++i) {
        if (std::fabs(v[i]) > 1e-12 * peak) {
            if (v[i] < 0.0)
                for (Index k = 0; k < n; ++k) v[k] = -v[k];
            return;
        }
    }
}

}  // namespace

Embedding spectral_embedding(const Matrix& w, Index d, LaplacianVariant variant) {
    const Index n = w.rows();
    if (w.cols() != n) throw BadShapesError("spectral_embedding: affinity must be square");
    if (d < 1 || d > n - 1)
        throw BadShapesError("spectral_embedding: need 1 <= d <= n-1, got d=" + std::to_string(d));
    if (max_abs_diff(w, transpose(w)) > 1e-8 * (1.0 + max_abs(w)))
        throw BadShapesError("spectral_embedding: affinity is not symmetric");

    const auto sizes = component_sizes(w);
    if (sizes.size() > 1) {
        std::string msg = "spectral_embedding: affinity graph has " +
                          std::to_string(sizes.size()) + " components of sizes";
        for (Index s : sizes) msg += " " + std::to_string(s);
        throw DisconnectedGraphError(sizes, msg);
    }

    std::vector<double> deg(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        deg[static_cast<std::size_t>(i)] = simd::sum(w.row(i), static_cast<std::size_t>(n));
        if (!(deg[static_cast<std::size_t>(i)] > 0.0))
            throw DisconnectedGraphError({n - 1, 1}, "spectral_embedding: isolated point " +
                                                         std::to_string(i));
    }

    // The random-walk Laplacian I - Deg^-1 W shares its spectrum with the
    // symmetric form I - Deg^-1/2 W Deg^-1/2; eigenvectors transfer through
    // Deg^-1/2, which keeps the solve symmetric.
    Matrix a(n, n);
    if (variant == LaplacianVariant::random_walk) {
        std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            inv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(deg[static_cast<std::size_t>(i)]);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                a(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt[static_cast<std::size_t>(i)] *
                                                    w(i, j) * inv_sqrt[static_cast<std::size_t>(j)];
    } else {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                a(i, j) = (i == j ? deg[static_cast<std::size_t>(i)] : 0.0) - w(i, j);
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }

    const auto want = static_cast<lapack_int>(d + 1);  // smallest d+1, drop the trivial one
    std::vector<double> eigenvalues(static_cast<std::size_t>(want));
    Matrix z(n, want);
    std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * want));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_ROW_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(n), a.data(),
        static_cast<lapack_int>(n), 0.0, 0.0, 1, want, 0.0, &found, eigenvalues.data(), z.data(),
        want, isuppz.data());
    if (info != 0 || found < want)
        throw SolverFailureError("spectral_embedding: eigensolver failed (info=" +
                                 std::to_string(info) + ")");

    Embedding emb;
    emb.coords = Matrix(n, d);
    emb.eigenvalues.assign(eigenvalues.begin() + 1, eigenvalues.end());
    std::vector<double> col(static_cast<std::size_t>(n));
    for (Index k = 0; k < d; ++k) {
        for (Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = z(i, k + 1);
        if (variant == LaplacianVariant::random_walk)
            for (Index i = 0; i < n; ++i)
                col[static_cast<std::size_t>(i)] /= std::sqrt(deg[static_cast<std::size_t>(i)]);
        const double norm = std::sqrt(simd::dot(col.data(), col.data(), col.size()));
        if (norm > 0.0)
            simd::scale(col.data(), 1.0 / norm, col.size());
        fix_sign(col.data(), n);
        for (Index i = 0; i < n; ++i) emb.coords(i, k) = col[static_cast<std::size_t>(i)];
    }
    return emb;
}

Embedding joint_embedding(const JointAffinity& joint, Index d, LaplacianVariant variant) {
    Embedding emb = spectral_embedding(joint.w, d, variant);
    emb.n1 = joint.n1;
    return emb;
}

}  // namespace dta
