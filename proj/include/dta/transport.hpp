#pragma once

#include <utility>
#include <vector>

#include "dta/matrix.hpp"

namespace dta {

// Marginal caps and total mass for a partial transport problem:
//   minimise <D, T>  s.t.  T >= 0,  T 1 <= v,  T^T 1 <= q,  sum T = M.
struct TransportSpec {
    std::vector<double> row_caps;  // v, length n
    std::vector<double> col_caps;  // q, length m
    double mass = 0.0;             // M, 0 < M <= min(sum v, sum q)

    // Uniform caps 1/n on both sides.  With M = min(1, m/n) every vertex
    // solution is an injective hard assignment (entries 0 or 1/n).
    static TransportSpec uniform_hard(Index n, Index m);

    double row_total() const;
    double col_total() const;
    // Throws BadShapesError for negative caps / empty sides, and
    // InfeasibleMassError when M is non-positive or exceeds the caps.
    void validate(Index n, Index m) const;
};

struct TransportPlan {
    Matrix t;            // n x m plan over the real points
    double objective;    // <D, T> in the original cost units
    double mass;         // transported mass
    int iterations;      // solver pivots / scaling sweeps
    bool entropic = false;
};

// Exact solve.  The problem is balanced by adding a slack row/column
// absorbing the untransported marginal mass (zero cost to slack, a large
// cost between the two slacks so no fictitious mass flows), then passed to a
// bipartite network simplex with a deterministic block pivot rule over the
// row-major arc order.  Costs are scaled to [0, 1] internally; the reported
// objective is in original units.  Throws SolverFailureError if the pivot
// budget is exhausted and BadShapesError on non-finite costs.
TransportPlan solve_partial_ot(const Matrix& cost, const TransportSpec& spec);

// Entropic variant: scaling iterations on the same slack-balanced problem.
// epsilon <= 0 selects the default 1e-2 * mean(cost).  Stops once both
// marginal violations drop below tol; SolverFailureError after max_iter
// sweeps.
TransportPlan solve_entropic(const Matrix& cost, const TransportSpec& spec,
                             double epsilon = 0.0, double tol = 1e-7, int max_iter = 10000);

// Normalised transport cost: objective / mass.  Non-decreasing in M for
// optimal plans.
double ntc(const TransportPlan& plan);

struct MassCurvePoint {
    double mass;
    double ntc;
};

struct KneeResult {
    Index index;  // grid index of the selected point
    bool flat;    // curve carried no usable knee; index points at the last entry
};

// Knee of an NTC-vs-mass curve: the point furthest below the chord through
// the first and last points after normalising both axes to [0, 1].  A curve
// whose total rise is below 1e-9 (relative) is flagged flat.
KneeResult knee_point(const std::vector<MassCurvePoint>& curve);

struct MassSelection {
    double mass;                        // selected M*
    std::vector<MassCurvePoint> curve;  // the evaluated grid
    bool flat_curve;
    Index knee_index;
};

// Sweeps a mass grid (default: grid_points values evenly spaced over
// [0.05, 1.0] * min(sum v, sum q)), solving exactly at each point, and picks
// the knee.  Flat curves select the grid maximum.
MassSelection select_mass(const Matrix& cost, const std::vector<double>& row_caps,
                          const std::vector<double>& col_caps, int grid_points = 20);

// Global min-max rescale of the plan entries to [0, 1].  A constant plan has
// no usable scale and raises ConstantPlanError.
Matrix minmax_normalize(const Matrix& plan);

// Extracts (i, j) pairs from a vertex plan in which every transported row
// holds exactly one significant entry.  Rows with more than one entry above
// tol raise NotAVertexSolutionError (e.g. plans from the entropic solver).
// The result is sorted by i and injective in j.
std::vector<std::pair<Index, Index>> hard_assignment(const TransportPlan& plan,
                                                     double tol = 1e-9);

// Row-argmax pairing for plans that are not vertices (entropic solutions):
// every row carrying more than mass_tol total mass is paired with its
// heaviest column.  Sorted by i; not necessarily injective.
std::vector<std::pair<Index, Index>> argmax_pairs(const Matrix& plan, double mass_tol = 1e-12);

}  // namespace dta
