#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dta/alignment.hpp"
#include "dta/diffusion_bridge.hpp"
#include "dta/kernel_graph.hpp"
#include "dta/matrix.hpp"
#include "dta/transport.hpp"

namespace dta {

struct AlignConfig {
    KernelConfig kernel;
    bool entropic = false;
    double epsilon = 0.0;         // <= 0: 1e-2 * mean cost
    std::optional<double> mass;   // fraction of min marginal; nullopt: knee selection
    int mass_grid_points = 20;
    bool use_labels = false;      // +1 cost on class mismatch
    int embed_dims = 0;           // > 0: also compute the joint embedding
    LaplacianVariant laplacian = LaplacianVariant::random_walk;
};

struct AlignResult {
    Matrix cost;                                  // inter-domain cost actually solved
    TransportPlan plan;
    Matrix plan_normalized;                       // min-max scaled plan
    std::vector<std::pair<Index, Index>> pairs;   // hard assignment, or row argmax
    double mass_fraction = 1.0;                   // of min(sum row caps, sum col caps)
    bool mass_auto = false;
    std::vector<MassCurvePoint> curve;            // filled in auto-mass mode
    bool flat_curve = false;
    Matrix projection;                            // domain 1 in domain-2 coordinates
    std::vector<bool> projection_mask;            // false where no mass was transported
    Embedding embedding;                          // empty unless embed_dims > 0
};

// Full alignment pass: per-domain diffusion operators, correspondence-bridged
// cross operators, inter-domain cost, partial transport (mass fixed or knee-
// selected on the exact solver), then the downstream products.  Labels are
// required only with use_labels.  Marginals are the uniform hard-assignment
// caps (1/n1 on both sides).
AlignResult align(const Matrix& x1, const Matrix& x2, const CorrespondenceSet& corr,
                  const AlignConfig& config, const std::vector<int>* labels1 = nullptr,
                  const std::vector<int>* labels2 = nullptr);

}  // namespace dta
