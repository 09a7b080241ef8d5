#include "dta/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

// ===== spec ================================================================

TransportSpec TransportSpec::uniform_hard(Index n, Index m) {
    TransportSpec s;
    s.row_caps.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    s.col_caps.assign(static_cast<std::size_t>(m), 1.0 / static_cast<double>(n));
    s.mass = n <= m ? 1.0 : static_cast<double>(m) / static_cast<double>(n);
    return s;
}

double TransportSpec::row_total() const {
    return simd::sum(row_caps.data(), row_caps.size());
}

double TransportSpec::col_total() const {
    return simd::sum(col_caps.data(), col_caps.size());
}

void TransportSpec::validate(Index n, Index m) const {
    if (static_cast<Index>(row_caps.size()) != n || static_cast<Index>(col_caps.size()) != m)
        throw BadShapesError("transport spec: cap lengths do not match the cost shape");
    if (row_caps.empty() || col_caps.empty())
        throw BadShapesError("transport spec: both sides need at least one point");
    for (double v : row_caps)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw BadShapesError("transport spec: row caps must be finite and non-negative");
    for (double q : col_caps)
        if (!(q >= 0.0) || !std::isfinite(q))
            throw BadShapesError("transport spec: col caps must be finite and non-negative");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InfeasibleMassError("transport spec: mass must be positive");
    const double cap = std::min(row_total(), col_total());
    if (mass > cap * (1.0 + 1e-12) + 1e-15)
        throw InfeasibleMassError("transport spec: mass " + std::to_string(mass) +
                                  " exceeds the marginal cap " + std::to_string(cap));
}

// ===== exact solver ========================================================
//
// The inequality-constrained problem is balanced by one slack demand node
// absorbing sum(v) - M and one slack supply node providing sum(q) - M, both
// at zero cost against real nodes.  The slack-slack arc carries a large cost:
// any plan routing fictitious slack-to-slack mass is strictly improvable, so
// the optimum transports exactly M real mass.  The balanced problem is then
// solved with a primal network simplex on the complete bipartite graph plus
// an artificial root, recomputing potentials from the tree after each pivot.

namespace {

constexpr double kSlackSlackCost = 3.0;   // real costs are scaled into [0, 1]
constexpr double kReducedCostEps = 1e-11;

class NetworkSimplex {
public:
    NetworkSimplex(const Matrix& cost, std::vector<double> supply, std::vector<double> demand)
        : ns_(static_cast<Index>(supply.size())),
          nt_(static_cast<Index>(demand.size())),
          root_(ns_ + nt_),
          num_nodes_(ns_ + nt_ + 1),
          num_arcs_(ns_ * nt_ + ns_ + nt_),
          supply_(std::move(supply)),
          demand_(std::move(demand)) {
        cost_.resize(static_cast<std::size_t>(num_arcs_));
        flow_.assign(static_cast<std::size_t>(num_arcs_), 0.0);
        in_tree_.assign(static_cast<std::size_t>(num_arcs_), 0);
        double max_cost = 0.0;
        for (Index s = 0; s < ns_; ++s)
            for (Index t = 0; t < nt_; ++t) {
                const double c = cost(s, t);
                cost_[static_cast<std::size_t>(s * nt_ + t)] = c;
                max_cost = std::max(max_cost, std::fabs(c));
            }
        // Artificial arcs connect every node to the root at a cost no
        // shortest real path can beat, so they drain to zero flow.
        art_cost_ = (max_cost + 1.0) * static_cast<double>(num_nodes_);
        for (Index u = 0; u < ns_ + nt_; ++u)
            cost_[static_cast<std::size_t>(ns_ * nt_ + u)] = art_cost_;

        parent_.assign(static_cast<std::size_t>(num_nodes_), -1);
        pred_arc_.assign(static_cast<std::size_t>(num_nodes_), -1);
        pred_dir_.assign(static_cast<std::size_t>(num_nodes_), 0);
        pi_.assign(static_cast<std::size_t>(num_nodes_), 0.0);
        adj_.assign(static_cast<std::size_t>(num_nodes_), {});
        stamp_.assign(static_cast<std::size_t>(num_nodes_), -1);

        // Initial basis: the star of artificial arcs.
        for (Index u = 0; u < ns_ + nt_; ++u) {
            const Index e = ns_ * nt_ + u;
            flow_[static_cast<std::size_t>(e)] =
                u < ns_ ? supply_[static_cast<std::size_t>(u)]
                        : demand_[static_cast<std::size_t>(u - ns_)];
            set_tree(e, true);
        }
        rebuild_tree();
    }

    // Runs pivots until no arc prices in.  Returns the pivot count.
    int solve(Index max_pivots) {
        const Index block = std::max<Index>(64, static_cast<Index>(std::sqrt(
                                                    static_cast<double>(num_arcs_))));
        Index next = 0;
        int pivots = 0;
        while (true) {
            Index entering = -1;
            double best = -kReducedCostEps;
            Index scanned = 0;
            while (scanned < num_arcs_) {
                const Index stop = std::min(num_arcs_ - scanned, block);
                for (Index step = 0; step < stop; ++step) {
                    const Index e = next;
                    if (++next == num_arcs_) next = 0;
                    if (in_tree_[static_cast<std::size_t>(e)]) continue;
                    const double rc = reduced_cost(e);
                    if (rc < best) {
                        best = rc;
                        entering = e;
                    }
                }
                scanned += stop;
                if (entering >= 0) break;  // best arc of the first offending block
            }
            if (entering < 0) break;  // optimal
            if (++pivots > max_pivots)
                throw SolverFailureError("network simplex: pivot budget exhausted (" +
                                         std::to_string(max_pivots) + ")");
            pivot(entering);
        }
        return pivots;
    }

    double flow_at(Index s, Index t) const {
        return flow_[static_cast<std::size_t>(s * nt_ + t)];
    }

private:
    Index tail(Index e) const {
        if (e < ns_ * nt_) return e / nt_;
        const Index u = e - ns_ * nt_;
        return u < ns_ ? u : root_;
    }
    Index head(Index e) const {
        if (e < ns_ * nt_) return ns_ + e % nt_;
        const Index u = e - ns_ * nt_;
        return u < ns_ ? root_ : u;
    }
    double reduced_cost(Index e) const {
        return cost_[static_cast<std::size_t>(e)] + pi_[static_cast<std::size_t>(tail(e))] -
               pi_[static_cast<std::size_t>(head(e))];
    }
    void set_tree(Index e, bool on) {
        in_tree_[static_cast<std::size_t>(e)] = on ? 1 : 0;
        auto& at = adj_[static_cast<std::size_t>(tail(e))];
        auto& ah = adj_[static_cast<std::size_t>(head(e))];
        if (on) {
            at.push_back(e);
            ah.push_back(e);
        } else {
            at.erase(std::find(at.begin(), at.end(), e));
            ah.erase(std::find(ah.begin(), ah.end(), e));
        }
    }

    // Recomputes parents, predecessor arcs and potentials from the tree
    // adjacency.  O(nodes); costs nothing at this problem scale and keeps the
    // potentials free of incremental drift.
    void rebuild_tree() {
        std::vector<Index> stack{root_};
        parent_[static_cast<std::size_t>(root_)] = -1;
        pred_arc_[static_cast<std::size_t>(root_)] = -1;
        pi_[static_cast<std::size_t>(root_)] = 0.0;
        while (!stack.empty()) {
            const Index x = stack.back();
            stack.pop_back();
            for (const Index e : adj_[static_cast<std::size_t>(x)]) {
                if (e == pred_arc_[static_cast<std::size_t>(x)]) continue;
                const Index h = head(e);
                const Index child = h == x ? tail(e) : h;
                parent_[static_cast<std::size_t>(child)] = x;
                pred_arc_[static_cast<std::size_t>(child)] = e;
                // +1: arc runs parent -> child, -1: child -> parent
                pred_dir_[static_cast<std::size_t>(child)] = h == child ? 1 : -1;
                pi_[static_cast<std::size_t>(child)] =
                    h == child ? pi_[static_cast<std::size_t>(x)] + cost_[static_cast<std::size_t>(e)]
                               : pi_[static_cast<std::size_t>(x)] - cost_[static_cast<std::size_t>(e)];
                stack.push_back(child);
            }
        }
    }

    void pivot(Index entering) {
        const Index u = tail(entering);
        const Index v = head(entering);

        // Join of the two tree paths.
        ++epoch_;
        for (Index x = u; x >= 0; x = parent_[static_cast<std::size_t>(x)])
            stamp_[static_cast<std::size_t>(x)] = epoch_;
        Index join = v;
        while (stamp_[static_cast<std::size_t>(join)] != epoch_)
            join = parent_[static_cast<std::size_t>(join)];

        // The cycle pushes flow u -> v over the entering arc, descends
        // join..u and ascends v..join.  Arcs traversed against their
        // orientation bound the push; the tightest one leaves the basis.
        double delta = std::numeric_limits<double>::infinity();
        Index leaving = -1;
        for (Index x = u; x != join; x = parent_[static_cast<std::size_t>(x)]) {
            if (pred_dir_[static_cast<std::size_t>(x)] < 0) {
                const double f = flow_[static_cast<std::size_t>(
                    pred_arc_[static_cast<std::size_t>(x)])];
                if (f < delta) {
                    delta = f;
                    leaving = pred_arc_[static_cast<std::size_t>(x)];
                }
            }
        }
        for (Index x = v; x != join; x = parent_[static_cast<std::size_t>(x)]) {
            if (pred_dir_[static_cast<std::size_t>(x)] > 0) {
                const double f = flow_[static_cast<std::size_t>(
                    pred_arc_[static_cast<std::size_t>(x)])];
                if (f <= delta) {
                    delta = f;
                    leaving = pred_arc_[static_cast<std::size_t>(x)];
                }
            }
        }
        if (leaving < 0)
            throw SolverFailureError("network simplex: unbounded pivot cycle");

        flow_[static_cast<std::size_t>(entering)] += delta;
        for (Index x = u; x != join; x = parent_[static_cast<std::size_t>(x)])
            flow_[static_cast<std::size_t>(pred_arc_[static_cast<std::size_t>(x)])] +=
                pred_dir_[static_cast<std::size_t>(x)] > 0 ? delta : -delta;
        for (Index x = v; x != join; x = parent_[static_cast<std::size_t>(x)])
            flow_[static_cast<std::size_t>(pred_arc_[static_cast<std::size_t>(x)])] +=
                pred_dir_[static_cast<std::size_t>(x)] > 0 ? -delta : delta;
        flow_[static_cast<std::size_t>(leaving)] = 0.0;

        set_tree(leaving, false);
        set_tree(entering, true);
        rebuild_tree();
    }

    Index ns_, nt_, root_, num_nodes_, num_arcs_;
    std::vector<double> supply_, demand_, cost_, flow_, pi_;
    std::vector<char> in_tree_;
    std::vector<Index> parent_, pred_arc_, stamp_;
    std::vector<int> pred_dir_;
    std::vector<std::vector<Index>> adj_;
    double art_cost_ = 0.0;
    Index epoch_ = 0;
};

void check_finite(const Matrix& cost) {
    const double* p = cost.data();
    const std::size_t n = static_cast<std::size_t>(cost.rows() * cost.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(p[i]))
            throw BadShapesError("transport: cost matrix contains a non-finite entry");
}

}  // namespace

TransportPlan solve_partial_ot(const Matrix& cost, const TransportSpec& spec) {
    const Index n = cost.rows();
    const Index m = cost.cols();
    spec.validate(n, m);
    check_finite(cost);

    const double row_total = spec.row_total();
    const double col_total = spec.col_total();
    const double scale = std::max(max_abs(cost), 1e-300);
    const double slack_tol = 1e-15 * std::max(1.0, std::max(row_total, col_total));

    const double slack_supply = std::max(0.0, col_total - spec.mass);  // feeds unmet demand
    const double slack_demand = std::max(0.0, row_total - spec.mass);  // absorbs unsent supply
    const bool use_slack_row = slack_supply > slack_tol;
    const bool use_slack_col = slack_demand > slack_tol;

    const Index ns = n + (use_slack_row ? 1 : 0);
    const Index nt = m + (use_slack_col ? 1 : 0);

    Matrix c(ns, nt, 0.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) c(i, j) = cost(i, j) / scale;
    if (use_slack_row && use_slack_col) c(n, m) = kSlackSlackCost;

    std::vector<double> supply(static_cast<std::size_t>(ns));
    std::vector<double> demand(static_cast<std::size_t>(nt));
    for (Index i = 0; i < n; ++i) supply[static_cast<std::size_t>(i)] = spec.row_caps[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m; ++j) demand[static_cast<std::size_t>(j)] = spec.col_caps[static_cast<std::size_t>(j)];
    if (use_slack_row) supply[static_cast<std::size_t>(n)] = slack_supply;
    if (use_slack_col) demand[static_cast<std::size_t>(m)] = slack_demand;

    // Force exact balance; rounding residue lands on the larger side's slack
    // or, failing that, the largest marginal.
    const double total_supply = simd::sum(supply.data(), supply.size());
    const double total_demand = simd::sum(demand.data(), demand.size());
    const double gap = total_supply - total_demand;
    if (gap > 0.0) {
        auto it = use_slack_col ? demand.end() - 1
                                : std::max_element(demand.begin(), demand.end());
        *it += gap;
    } else if (gap < 0.0) {
        auto it = use_slack_row ? supply.end() - 1
                                : std::max_element(supply.begin(), supply.end());
        *it -= gap;
    }

    NetworkSimplex simplex(c, std::move(supply), std::move(demand));
    const Index budget = 200 * (ns + nt) + 1000;
    const int pivots = simplex.solve(budget);

    TransportPlan plan;
    plan.t = Matrix(n, m);
    plan.mass = 0.0;
    plan.objective = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) {
            const double f = std::max(0.0, simplex.flow_at(i, j));
            plan.t(i, j) = f;
            plan.mass += f;
            plan.objective += f * cost(i, j);
        }
    plan.iterations = pivots;
    plan.entropic = false;
    return plan;
}

// ===== entropic solver =====================================================

TransportPlan solve_entropic(const Matrix& cost, const TransportSpec& spec,
                             double epsilon, double tol, int max_iter) {
    const Index n = cost.rows();
    const Index m = cost.cols();
    spec.validate(n, m);
    check_finite(cost);

    const double scale = std::max(max_abs(cost), 1e-300);
    if (epsilon <= 0.0) {
        const double mean =
            simd::sum(cost.data(), static_cast<std::size_t>(n * m)) / static_cast<double>(n * m);
        epsilon = 1e-2 * std::max(mean, 1e-300);
    }
    const double eps = epsilon / scale;

    const double row_total = spec.row_total();
    const double col_total = spec.col_total();
    const double slack_tol = 1e-15 * std::max(1.0, std::max(row_total, col_total));
    const double slack_supply = std::max(0.0, col_total - spec.mass);
    const double slack_demand = std::max(0.0, row_total - spec.mass);
    const bool use_slack_row = slack_supply > slack_tol;
    const bool use_slack_col = slack_demand > slack_tol;
    const Index ns = n + (use_slack_row ? 1 : 0);
    const Index nt = m + (use_slack_col ? 1 : 0);

    Matrix c(ns, nt, 0.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) c(i, j) = cost(i, j) / scale;
    if (use_slack_row && use_slack_col) c(n, m) = kSlackSlackCost;

    std::vector<double> a(static_cast<std::size_t>(ns));
    std::vector<double> b(static_cast<std::size_t>(nt));
    for (Index i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = spec.row_caps[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m; ++j) b[static_cast<std::size_t>(j)] = spec.col_caps[static_cast<std::size_t>(j)];
    if (use_slack_row) a[static_cast<std::size_t>(n)] = slack_supply;
    if (use_slack_col) b[static_cast<std::size_t>(m)] = slack_demand;

    constexpr double kNegInf = -1e300;
    std::vector<double> f(static_cast<std::size_t>(ns), 0.0);
    std::vector<double> g(static_cast<std::size_t>(nt), 0.0);
    std::vector<double> log_a(static_cast<std::size_t>(ns));
    std::vector<double> log_b(static_cast<std::size_t>(nt));
    for (Index i = 0; i < ns; ++i)
        log_a[static_cast<std::size_t>(i)] =
            a[static_cast<std::size_t>(i)] > 0.0 ? std::log(a[static_cast<std::size_t>(i)]) : kNegInf;
    for (Index j = 0; j < nt; ++j)
        log_b[static_cast<std::size_t>(j)] =
            b[static_cast<std::size_t>(j)] > 0.0 ? std::log(b[static_cast<std::size_t>(j)]) : kNegInf;

    // Log-domain scaling: P_ij = exp((f_i + g_j - c_ij) / eps).
    auto logsumexp_row = [&](Index i) {
        double hi = -std::numeric_limits<double>::infinity();
        for (Index j = 0; j < nt; ++j)
            hi = std::max(hi, (g[static_cast<std::size_t>(j)] - c(i, j)) / eps);
        if (!std::isfinite(hi)) return hi;
        double s = 0.0;
        for (Index j = 0; j < nt; ++j)
            s += std::exp((g[static_cast<std::size_t>(j)] - c(i, j)) / eps - hi);
        return hi + std::log(s);
    };
    auto logsumexp_col = [&](Index j) {
        double hi = -std::numeric_limits<double>::infinity();
        for (Index i = 0; i < ns; ++i)
            hi = std::max(hi, (f[static_cast<std::size_t>(i)] - c(i, j)) / eps);
        if (!std::isfinite(hi)) return hi;
        double s = 0.0;
        for (Index i = 0; i < ns; ++i)
            s += std::exp((f[static_cast<std::size_t>(i)] - c(i, j)) / eps - hi);
        return hi + std::log(s);
    };

    Matrix p(ns, nt);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (Index i = 0; i < ns; ++i)
            f[static_cast<std::size_t>(i)] =
                log_a[static_cast<std::size_t>(i)] <= kNegInf
                    ? kNegInf
                    : eps * log_a[static_cast<std::size_t>(i)] - eps * logsumexp_row(i);
        for (Index j = 0; j < nt; ++j)
            g[static_cast<std::size_t>(j)] =
                log_b[static_cast<std::size_t>(j)] <= kNegInf
                    ? kNegInf
                    : eps * log_b[static_cast<std::size_t>(j)] - eps * logsumexp_col(j);

        for (Index i = 0; i < ns; ++i)
            for (Index j = 0; j < nt; ++j) {
                const double lg =
                    (f[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(j)] - c(i, j)) / eps;
                p(i, j) = lg <= -700.0 ? 0.0 : std::exp(lg);
            }
        double violation = 0.0;
        for (Index i = 0; i < ns; ++i)
            violation = std::max(violation,
                                 std::fabs(simd::sum(p.row(i), static_cast<std::size_t>(nt)) -
                                           a[static_cast<std::size_t>(i)]));
        for (Index j = 0; j < nt; ++j) {
            double s = 0.0;
            for (Index i = 0; i < ns; ++i) s += p(i, j);
            violation = std::max(violation, std::fabs(s - b[static_cast<std::size_t>(j)]));
        }
        if (violation < tol) break;
    }
    if (iter >= max_iter)
        throw SolverFailureError("entropic transport: marginals did not converge within " +
                                 std::to_string(max_iter) + " sweeps");

    TransportPlan plan;
    plan.t = Matrix(n, m);
    plan.mass = 0.0;
    plan.objective = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) {
            const double v = p(i, j);
            plan.t(i, j) = v;
            plan.mass += v;
            plan.objective += v * cost(i, j);
        }
    plan.iterations = iter + 1;
    plan.entropic = true;
    return plan;
}

// ===== mass selection ======================================================

double ntc(const TransportPlan& plan) {
    if (!(plan.mass > 0.0)) throw InfeasibleMassError("ntc: plan carries no mass");
    return plan.objective / plan.mass;
}

KneeResult knee_point(const std::vector<MassCurvePoint>& curve) {
    if (curve.size() < 2) throw BadShapesError("knee_point: need at least two curve points");
    const Index last = static_cast<Index>(curve.size()) - 1;
    const double y0 = curve.front().ntc;
    const double y1 = curve.back().ntc;
    const double rise = std::fabs(y1 - y0);
    if (rise <= 1e-9 * std::max({std::fabs(y0), std::fabs(y1), 1e-12}))
        return {last, true};
    const double x0 = curve.front().mass;
    const double x1 = curve.back().mass;
    // Normalise both axes; the chord becomes y = x and the knee is the point
    // furthest below it.
    Index best = 0;
    double best_d = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i <= last; ++i) {
        const double x = (curve[static_cast<std::size_t>(i)].mass - x0) / (x1 - x0);
        const double y = (curve[static_cast<std::size_t>(i)].ntc - y0) / (y1 - y0);
        const double d = x - y;
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    return {best, false};
}

MassSelection select_mass(const Matrix& cost, const std::vector<double>& row_caps,
                          const std::vector<double>& col_caps, int grid_points) {
    if (grid_points < 5)
        throw BadShapesError("select_mass: the mass grid needs at least 5 points");
    TransportSpec spec;
    spec.row_caps = row_caps;
    spec.col_caps = col_caps;
    const double cap = std::min(simd::sum(row_caps.data(), row_caps.size()),
                                simd::sum(col_caps.data(), col_caps.size()));
    if (!(cap > 0.0)) throw InfeasibleMassError("select_mass: marginal caps admit no mass");

    MassSelection sel;
    sel.curve.reserve(static_cast<std::size_t>(grid_points));
    for (int g = 0; g < grid_points; ++g) {
        // evenly spaced fractions over [1/20, 20/20]; the form keeps common
        // grid values (0.05 steps at the default 20 points) exact in binary
        const double frac =
            (1.0 + 19.0 * static_cast<double>(g) / static_cast<double>(grid_points - 1)) / 20.0;
        spec.mass = frac * cap;
        TransportPlan plan = solve_partial_ot(cost, spec);
        sel.curve.push_back({spec.mass, ntc(plan)});
    }
    const KneeResult knee = knee_point(sel.curve);
    sel.flat_curve = knee.flat;
    sel.knee_index = knee.index;
    sel.mass = sel.curve[static_cast<std::size_t>(knee.index)].mass;
    return sel;
}

// ===== plan post-processing ================================================

Matrix minmax_normalize(const Matrix& plan) {
    const double* p = plan.data();
    const std::size_t n = static_cast<std::size_t>(plan.rows() * plan.cols());
    if (n == 0) throw BadShapesError("minmax_normalize: empty plan");
    double lo = p[0], hi = p[0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
    }
    if (!(hi - lo > 0.0))
        throw ConstantPlanError("minmax_normalize: plan entries are all equal");
    Matrix out(plan.rows(), plan.cols());
    double* q = out.data();
    const double inv = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < n; ++i) q[i] = (p[i] - lo) * inv;
    return out;
}

std::vector<std::pair<Index, Index>> hard_assignment(const TransportPlan& plan, double tol) {
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<char> used(static_cast<std::size_t>(plan.t.cols()), 0);
    for (Index i = 0; i < plan.t.rows(); ++i) {
        Index hit = -1;
        int count = 0;
        for (Index j = 0; j < plan.t.cols(); ++j) {
            if (plan.t(i, j) > tol) {
                ++count;
                hit = j;
            }
        }
        if (count > 1)
            throw NotAVertexSolutionError("hard_assignment: row " + std::to_string(i) + " has " +
                                          std::to_string(count) +
                                          " entries above tolerance; not a vertex plan");
        if (count == 1) {
            if (used[static_cast<std::size_t>(hit)])
                throw NotAVertexSolutionError("hard_assignment: column " + std::to_string(hit) +
                                              " receives from two rows; not an assignment");
            used[static_cast<std::size_t>(hit)] = 1;
            pairs.emplace_back(i, hit);
        }
    }
    return pairs;
}

std::vector<std::pair<Index, Index>> argmax_pairs(const Matrix& plan, double mass_tol) {
    std::vector<std::pair<Index, Index>> pairs;
    for (Index i = 0; i < plan.rows(); ++i) {
        double total = 0.0;
        double best = -1.0;
        Index best_j = -1;
        for (Index j = 0; j < plan.cols(); ++j) {
            total += plan(i, j);
            if (plan(i, j) > best) {
                best = plan(i, j);
                best_j = j;
            }
        }
        if (total > mass_tol) pairs.emplace_back(i, best_j);
    }
    return pairs;
}

}  // namespace dta
