#include "dta/diffusion_bridge.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

void validate_correspondences(const CorrespondenceSet& corr, Index n1, Index n2) {
    if (corr.empty())
        throw BadCorrespondenceError("correspondences: at least one pair is required");
    std::set<Index> seen_i, seen_j;
    for (const auto& c : corr) {
        if (c.i < 0 || c.i >= n1 || c.j < 0 || c.j >= n2)
            throw BadCorrespondenceError(
                "correspondences: pair (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                ") is out of range for sizes " + std::to_string(n1) + " x " + std::to_string(n2));
        // the pairing must be one-to-one on both sides
        if (!seen_i.insert(c.i).second)
            throw BadCorrespondenceError("correspondences: domain-1 index " +
                                         std::to_string(c.i) + " appears twice");
        if (!seen_j.insert(c.j).second)
            throw BadCorrespondenceError("correspondences: domain-2 index " +
                                         std::to_string(c.j) + " appears twice");
    }
}

BridgeBlocks extract_blocks(const Matrix& pt, const std::vector<Index>& idx) {
    const Index n = pt.rows();
    if (pt.cols() != n) throw BadShapesError("extract_blocks: operator must be square");
    for (Index id : idx)
        if (id < 0 || id >= n)
            throw BadCorrespondenceError("extract_blocks: anchor index " + std::to_string(id) +
                                         " out of range");
    const Index c = static_cast<Index>(idx.size());
    BridgeBlocks b{Matrix(n, c), Matrix(c, n)};
    for (Index a = 0; a < c; ++a) {
        const Index id = idx[static_cast<std::size_t>(a)];
        for (Index r = 0; r < n; ++r) b.cols(r, a) = pt(r, id);
        for (Index col = 0; col < n; ++col) b.rows(a, col) = pt(id, col);
    }
    return b;
}

Matrix cross_operator(const Matrix& cols_src, const Matrix& rows_dst) {
    if (cols_src.cols() != rows_dst.rows())
        throw BadShapesError("cross_operator: anchor counts differ");
    Matrix prod = matmul(cols_src, rows_dst);
    std::vector<Index> dead;
    for (Index i = 0; i < prod.rows(); ++i) {
        const double s = simd::sum(prod.row(i), static_cast<std::size_t>(prod.cols()));
        if (s > 0.0)
            simd::scale(prod.row(i), 1.0 / s, static_cast<std::size_t>(prod.cols()));
        else
            dead.push_back(i);
    }
    if (!dead.empty())
        throw UnreachablePointError(
            dead, "cross_operator: " + std::to_string(dead.size()) +
                      " point(s) carry no mass to any correspondence anchor (first at row " +
                      std::to_string(dead.front()) + "); increase t or add correspondences");
    return prod;
}

namespace {

// 1 - cosine similarity; 1.0 when either vector is identically zero.
double cosine_cost(const double* a, const double* b, std::size_t n,
                   double norm_a, double norm_b) {
    if (norm_a <= 0.0 || norm_b <= 0.0) return 1.0;
    return 1.0 - simd::dot(a, b, n) / (norm_a * norm_b);
}

std::vector<double> row_norms(const Matrix& m) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i)
        out[static_cast<std::size_t>(i)] =
            std::sqrt(simd::dot(m.row(i), m.row(i), static_cast<std::size_t>(m.cols())));
    return out;
}

}  // namespace

Matrix inter_domain_cost(const Matrix& p12, const Matrix& pt2,
                         const Matrix& p21, const Matrix& pt1) {
    const Index n = p12.rows();
    const Index m = pt2.rows();
    if (p12.cols() != m || pt2.cols() != m)
        throw BadShapesError("inter_domain_cost: domain-2 row widths differ");
    if (p21.rows() != m || p21.cols() != n || pt1.rows() != n || pt1.cols() != n)
        throw BadShapesError("inter_domain_cost: domain-1 block shapes differ");

    const auto norms12 = row_norms(p12);
    const auto norms_t2 = row_norms(pt2);
    const auto norms21 = row_norms(p21);
    const auto norms_t1 = row_norms(pt1);

    Matrix d(n, m);
    const auto w2 = static_cast<std::size_t>(m);
    const auto w1 = static_cast<std::size_t>(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) {
            const double fwd = cosine_cost(p12.row(i), pt2.row(j), w2,
                                           norms12[static_cast<std::size_t>(i)],
                                           norms_t2[static_cast<std::size_t>(j)]);
            const double bwd = cosine_cost(p21.row(j), pt1.row(i), w1,
                                           norms21[static_cast<std::size_t>(j)],
                                           norms_t1[static_cast<std::size_t>(i)]);
            d(i, j) = fwd + bwd;
        }
    }
    return d;
}

Matrix label_augment(const Matrix& cost, const std::vector<int>& labels1,
                     const std::vector<int>& labels2) {
    if (static_cast<Index>(labels1.size()) != cost.rows() ||
        static_cast<Index>(labels2.size()) != cost.cols())
        throw BadLabelsError("label_augment: label counts do not match the cost shape");
    Matrix out = cost;
    for (Index i = 0; i < out.rows(); ++i)
        for (Index j = 0; j < out.cols(); ++j)
            if (labels1[static_cast<std::size_t>(i)] != labels2[static_cast<std::size_t>(j)])
                out(i, j) += 1.0;
    return out;
}

}  // namespace dta
