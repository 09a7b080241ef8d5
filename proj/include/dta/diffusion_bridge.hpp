#pragma once

#include <vector>

#include "dta/matrix.hpp"

namespace dta {

// A known cross-domain pair: row i of domain 1 corresponds to row j of
// domain 2.
struct CorrespondencePair {
    Index i;
    Index j;

    bool operator==(const CorrespondencePair&) const = default;
};
using CorrespondenceSet = std::vector<CorrespondencePair>;

// Throws BadCorrespondenceError on an empty set, an out-of-range index, or a
// repeated index on either side (the pairing must be one-to-one).
void validate_correspondences(const CorrespondenceSet& corr, Index n1, Index n2);

// Slices of a diffused operator at the correspondence anchors:
//   cols = P^t[:, idx]   (n x c)   mass sent from each point to the anchors
//   rows = P^t[idx, :]   (c x n)   mass spread from each anchor
struct BridgeBlocks {
    Matrix cols;
    Matrix rows;
};
BridgeBlocks extract_blocks(const Matrix& pt, const std::vector<Index>& idx);

// Cross-domain operator: row-normalised (cols_src * rows_dst).  Rows of the
// product with zero mass mean the diffusion never reaches an anchor from that
// point; they raise UnreachablePointError listing every such row.
Matrix cross_operator(const Matrix& cols_src, const Matrix& rows_dst);

// Transport cost between the domains.  Entry (i, j) compares how point i of
// domain 1 looks from inside domain 2 against point j's own diffusion
// profile, and symmetrically for j inside domain 1:
//   D(i,j) = (1 - cos(p12[i,:], pt2[j,:])) + (1 - cos(p21[j,:], pt1[i,:]))
// Costs land in [0, 2] because every row is non-negative.
Matrix inter_domain_cost(const Matrix& p12, const Matrix& pt2,
                         const Matrix& p21, const Matrix& pt1);

// D(i,j) += 1 whenever labels disagree.  Label vectors must match the cost
// shape (BadLabelsError otherwise).
Matrix label_augment(const Matrix& cost, const std::vector<int>& labels1,
                     const std::vector<int>& labels2);

}  // namespace dta
