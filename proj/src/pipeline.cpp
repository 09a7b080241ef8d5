#include "dta/pipeline.hpp"

#include <algorithm>

#include "dta/error.hpp"

namespace dta {

AlignResult align(const Matrix& x1, const Matrix& x2, const CorrespondenceSet& corr,
                  const AlignConfig& config, const std::vector<int>* labels1,
                  const std::vector<int>* labels2) {
    const Index n1 = x1.rows();
    const Index n2 = x2.rows();
    config.kernel.validate(n1);
    config.kernel.validate(n2);
    validate_correspondences(corr, n1, n2);
    if (config.use_labels && (labels1 == nullptr || labels2 == nullptr))
        throw BadLabelsError("align: label-augmented cost requested but labels are missing");

    const Matrix k1 = decay_kernel_points(x1, config.kernel);
    const Matrix k2 = decay_kernel_points(x2, config.kernel);
    const Matrix pt1 = diffuse(row_normalize(k1), config.kernel.t);
    const Matrix pt2 = diffuse(row_normalize(k2), config.kernel.t);

    std::vector<Index> idx1, idx2;
    idx1.reserve(corr.size());
    idx2.reserve(corr.size());
    for (const auto& c : corr) {
        idx1.push_back(c.i);
        idx2.push_back(c.j);
    }
    const BridgeBlocks b1 = extract_blocks(pt1, idx1);
    const BridgeBlocks b2 = extract_blocks(pt2, idx2);
    const Matrix p12 = cross_operator(b1.cols, b2.rows);
    const Matrix p21 = cross_operator(b2.cols, b1.rows);

    AlignResult result;
    result.cost = inter_domain_cost(p12, pt2, p21, pt1);
    if (config.use_labels) result.cost = label_augment(result.cost, *labels1, *labels2);

    TransportSpec spec = TransportSpec::uniform_hard(n1, n2);
    const double cap = std::min(spec.row_total(), spec.col_total());
    if (config.mass.has_value()) {
        result.mass_fraction = *config.mass;
        if (!(result.mass_fraction > 0.0) || result.mass_fraction > 1.0)
            throw InfeasibleMassError("align: mass fraction must lie in (0, 1]");
        spec.mass = result.mass_fraction * cap;
    } else {
        // knee selection always runs on the exact solver so the curve is the
        // true optimal-value function
        result.mass_auto = true;
        MassSelection sel = select_mass(result.cost, spec.row_caps, spec.col_caps,
                                        config.mass_grid_points);
        result.curve = std::move(sel.curve);
        result.flat_curve = sel.flat_curve;
        result.mass_fraction = sel.mass / cap;
        spec.mass = sel.mass;
    }

    result.plan = config.entropic ? solve_entropic(result.cost, spec, config.epsilon)
                                  : solve_partial_ot(result.cost, spec);
    result.plan_normalized = minmax_normalize(result.plan.t);
    if (!config.entropic) {
        try {
            result.pairs = hard_assignment(result.plan);
        } catch (const NotAVertexSolutionError&) {
            // fractional-mass vertices can split a row across two columns
            result.pairs = argmax_pairs(result.plan.t);
        }
    } else {
        result.pairs = argmax_pairs(result.plan.t);
    }
    result.projection = barycentric_project(result.plan_normalized, x2,
                                            &result.projection_mask);

    if (config.embed_dims > 0) {
        const Matrix w12 = cross_similarity(k1, result.plan_normalized, k2);
        const JointAffinity joint = joint_affinity(k1, k2, w12, config.kernel.mu);
        result.embedding = joint_embedding(joint, config.embed_dims, config.laplacian);
    }
    return result;
}

}  // namespace dta
