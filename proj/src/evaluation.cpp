#include "dta/evaluation.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "dta/alignment.hpp"
#include "dta/error.hpp"
#include "dta/simd/simd.hpp"

namespace dta {

namespace {

void check_pairs_in_range(const std::vector<std::pair<Index, Index>>& pairs, Index n1, Index n2,
                          const char* where) {
    for (const auto& [i, j] : pairs)
        if (i < 0 || i >= n1 || j < 0 || j >= n2)
            throw BadCorrespondenceError(std::string(where) + ": pair (" + std::to_string(i) +
                                         ", " + std::to_string(j) + ") out of range");
}

std::vector<double> row_distances(const Matrix& x, const double* q) {
    std::vector<double> d(static_cast<std::size_t>(x.rows()));
    for (Index i = 0; i < x.rows(); ++i)
        d[static_cast<std::size_t>(i)] = std::sqrt(simd::squared_distance(x.row(i), q, x.cols()));
    return d;
}

}  // namespace

std::vector<int> knn_classify(const Matrix& train_x, const std::vector<int>& train_labels,
                              const Matrix& test_x, Index k) {
    if (train_x.rows() == 0) throw BadShapesError("knn_classify: empty training set");
    if (static_cast<std::size_t>(train_x.rows()) != train_labels.size())
        throw BadLabelsError("knn_classify: label count does not match training rows");
    if (train_x.cols() != test_x.cols())
        throw BadShapesError("knn_classify: feature dimensions disagree");
    if (k < 1 || k > train_x.rows())
        throw BadShapesError("knn_classify: k must lie in [1, train size]");

    std::vector<int> predicted(static_cast<std::size_t>(test_x.rows()));
    std::vector<Index> order(static_cast<std::size_t>(train_x.rows()));
    for (Index q = 0; q < test_x.rows(); ++q) {
        const auto dist = row_distances(train_x, test_x.row(q));
        std::iota(order.begin(), order.end(), Index{0});
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](Index a, Index b) {
                              const double da = dist[static_cast<std::size_t>(a)];
                              const double db = dist[static_cast<std::size_t>(b)];
                              return da != db ? da < db : a < b;
                          });
        // per-class vote count and mean distance within the neighborhood
        std::map<int, std::pair<int, double>> votes;
        for (Index r = 0; r < k; ++r) {
            const Index idx = order[static_cast<std::size_t>(r)];
            auto& v = votes[train_labels[static_cast<std::size_t>(idx)]];
            v.first += 1;
            v.second += dist[static_cast<std::size_t>(idx)];
        }
        int best_label = 0;
        int best_count = -1;
        double best_mean = 0.0;
        for (const auto& [label, v] : votes) {
            const double mean = v.second / v.first;
            const bool wins = v.first > best_count ||
                              (v.first == best_count && mean < best_mean) ||
                              (v.first == best_count && mean == best_mean && label < best_label);
            if (wins) {
                best_label = label;
                best_count = v.first;
                best_mean = mean;
            }
        }
        predicted[static_cast<std::size_t>(q)] = best_label;
    }
    return predicted;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || predicted.empty())
        throw BadShapesError("accuracy: size mismatch or empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

namespace {

double median_pairwise_distance(const Matrix& x) {
    const Index n = x.rows();
    if (n < 2) return 1.0;
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            d.push_back(std::sqrt(simd::squared_distance(x.row(i), x.row(j), x.cols())));
    const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
    std::nth_element(d.begin(), mid, d.end());
    if (*mid > 0.0) return *mid;
    // duplicates collapsed the median; fall back to the smallest positive gap
    double smallest = 0.0;
    for (double v : d)
        if (v > 0.0 && (smallest == 0.0 || v < smallest)) smallest = v;
    return smallest > 0.0 ? smallest : 1.0;
}

Matrix gaussian_gram(const Matrix& a, const Matrix& b, double bandwidth) {
    Matrix g(a.rows(), b.rows());
    const double inv = -1.0 / (2.0 * bandwidth * bandwidth);
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.rows(); ++j)
            g(i, j) = std::exp(inv * simd::squared_distance(a.row(i), b.row(j), a.cols()));
    return g;
}

}  // namespace

Matrix krr_fit_predict(const Matrix& train_x, const Matrix& train_y, const Matrix& test_x,
                       double lambda, double bandwidth) {
    if (train_x.rows() == 0) throw BadShapesError("krr_fit_predict: empty training set");
    if (train_x.rows() != train_y.rows())
        throw BadShapesError("krr_fit_predict: feature and target row counts disagree");
    if (train_x.cols() != test_x.cols())
        throw BadShapesError("krr_fit_predict: feature dimensions disagree");
    if (!(lambda > 0.0)) throw BadShapesError("krr_fit_predict: lambda must be positive");
    if (bandwidth <= 0.0) bandwidth = median_pairwise_distance(train_x);

    const Index n = train_x.rows();
    Matrix g = gaussian_gram(train_x, train_x, bandwidth);
    for (Index i = 0; i < n; ++i) g(i, i) += lambda;
    Matrix coef = train_y;
    const lapack_int info = LAPACKE_dposv(
        LAPACK_ROW_MAJOR, 'L', static_cast<lapack_int>(n),
        static_cast<lapack_int>(coef.cols()), g.data(), static_cast<lapack_int>(n), coef.data(),
        static_cast<lapack_int>(coef.cols()));
    if (info != 0)
        throw SolverFailureError("krr_fit_predict: Cholesky solve failed (info=" +
                                 std::to_string(info) + ")");
    return matmul(gaussian_gram(test_x, train_x, bandwidth), coef);
}

double mean_squared_error(const Matrix& predicted, const Matrix& expected) {
    if (predicted.rows() != expected.rows() || predicted.cols() != expected.cols() ||
        predicted.empty())
        throw BadShapesError("mean_squared_error: shape mismatch or empty input");
    double total = 0.0;
    const double* p = predicted.data();
    const double* e = expected.data();
    const Index count = predicted.rows() * predicted.cols();
    for (Index i = 0; i < count; ++i) {
        const double diff = p[i] - e[i];
        total += diff * diff;
    }
    return total / static_cast<double>(count);
}

DomainAdaptationReport eval_domain_adaptation(const Matrix& plan, const DatasetPair& pair,
                                              Index k) {
    if (!pair.d1.has_labels() || !pair.d2.has_labels())
        throw BadLabelsError("eval_domain_adaptation: both domains must be labeled");
    if (plan.rows() != pair.d1.x.rows() || plan.cols() != pair.d2.x.rows())
        throw BadShapesError("eval_domain_adaptation: plan shape does not match the domains");

    std::vector<bool> mask;
    const Matrix projected = barycentric_project(plan, pair.d2.x, &mask);
    Index scored = 0;
    for (bool m : mask) scored += m ? 1 : 0;
    DomainAdaptationReport report;
    report.n_scored = scored;
    report.n_skipped = plan.rows() - scored;
    if (scored == 0) return report;

    Matrix test(scored, projected.cols());
    std::vector<int> truth(static_cast<std::size_t>(scored));
    Index r = 0;
    for (Index i = 0; i < projected.rows(); ++i) {
        if (!mask[static_cast<std::size_t>(i)]) continue;
        std::copy(projected.row(i), projected.row(i) + projected.cols(), test.row(r));
        truth[static_cast<std::size_t>(r)] = pair.d1.labels[static_cast<std::size_t>(i)];
        ++r;
    }
    const Index k_eff = std::min(k, pair.d2.x.rows());
    const auto predicted = knn_classify(pair.d2.x, pair.d2.labels, test, k_eff);
    report.accuracy = accuracy(predicted, truth);
    return report;
}

namespace {

struct RegressionProblem {
    const DatasetPair& pair;
    RegressionTarget target;
    std::vector<Index> inv_truth;  // d2 row -> true d1 partner, -1 when none

    Index target_dim() const {
        return target == RegressionTarget::domain2 ? pair.d2.x.cols() : pair.latent.cols();
    }
    // target representation keyed by the d2 row; null when undefined
    const double* target_row(Index j) const {
        if (target == RegressionTarget::domain2) return pair.d2.x.row(j);
        const Index i = inv_truth[static_cast<std::size_t>(j)];
        return i >= 0 ? pair.latent.row(i) : nullptr;
    }
};

double fit_variant(const RegressionProblem& prob,
                   const std::vector<std::pair<Index, Index>>& training_pairs,
                   const std::vector<char>& i_in_test, const Matrix& test_x,
                   const Matrix& test_y, double lambda, double bandwidth, const char* name,
                   Index* n_train) {
    std::vector<std::pair<Index, Index>> usable;
    for (const auto& p : training_pairs)
        if (!i_in_test[static_cast<std::size_t>(p.first)] && prob.target_row(p.second) != nullptr)
            usable.push_back(p);
    if (usable.empty())
        throw Error(std::string("eval_regression: variant '") + name +
                    "' has no usable training pair");
    Matrix x(static_cast<Index>(usable.size()), prob.pair.d1.x.cols());
    Matrix y(static_cast<Index>(usable.size()), prob.target_dim());
    for (std::size_t r = 0; r < usable.size(); ++r) {
        const auto [i, j] = usable[r];
        std::copy(prob.pair.d1.x.row(i), prob.pair.d1.x.row(i) + x.cols(),
                  x.row(static_cast<Index>(r)));
        const double* t = prob.target_row(j);
        std::copy(t, t + y.cols(), y.row(static_cast<Index>(r)));
    }
    *n_train = x.rows();
    return mean_squared_error(krr_fit_predict(x, y, test_x, lambda, bandwidth), test_y);
}

}  // namespace

RegressionReport eval_regression(const std::vector<std::pair<Index, Index>>& recovered,
                                 const std::vector<std::pair<Index, Index>>& known,
                                 const DatasetPair& pair, RegressionTarget target, double lambda,
                                 double bandwidth, std::uint64_t split_seed) {
    const Index n1 = pair.d1.x.rows();
    const Index n2 = pair.d2.x.rows();
    if (recovered.empty()) throw BadCorrespondenceError("eval_regression: no recovered pairs");
    if (pair.ground_truth.size() < 2)
        throw Error("eval_regression: need at least 2 ground-truth pairs to split");
    check_pairs_in_range(recovered, n1, n2, "eval_regression (recovered)");
    check_pairs_in_range(known, n1, n2, "eval_regression (known)");
    check_pairs_in_range(pair.ground_truth, n1, n2, "eval_regression (truth)");
    if (target == RegressionTarget::latent &&
        (pair.latent.empty() || pair.latent.rows() != n1))
        throw BadShapesError("eval_regression: latent target requested but latent is missing");

    RegressionProblem prob{pair, target, std::vector<Index>(static_cast<std::size_t>(n2), -1)};
    for (const auto& [i, j] : pair.ground_truth) prob.inv_truth[static_cast<std::size_t>(j)] = i;

    // 70/30 split of the ground truth; the test side is shared by all variants
    std::vector<std::size_t> order(pair.ground_truth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(split_seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t train_count = static_cast<std::size_t>(
        std::llround(0.7 * static_cast<double>(order.size())));
    train_count = std::clamp<std::size_t>(train_count, 1, order.size() - 1);

    // Collect both sides in the original ground-truth order so that a
    // recovered set equal to the truth builds the same training matrices as
    // the alldata variant, row for row.
    std::vector<char> in_test_split(order.size(), 0);
    for (std::size_t r = train_count; r < order.size(); ++r) in_test_split[order[r]] = 1;

    std::vector<char> i_in_test(static_cast<std::size_t>(n1), 0);
    std::vector<std::pair<Index, Index>> truth_train, truth_test;
    for (std::size_t idx = 0; idx < pair.ground_truth.size(); ++idx) {
        const auto& p = pair.ground_truth[idx];
        if (in_test_split[idx]) {
            truth_test.push_back(p);
            i_in_test[static_cast<std::size_t>(p.first)] = 1;
        } else {
            truth_train.push_back(p);
        }
    }
    if (truth_test.empty()) throw Error("eval_regression: test split is empty");

    Matrix test_x(static_cast<Index>(truth_test.size()), pair.d1.x.cols());
    Matrix test_y(static_cast<Index>(truth_test.size()), prob.target_dim());
    for (std::size_t r = 0; r < truth_test.size(); ++r) {
        const auto [i, j] = truth_test[r];
        std::copy(pair.d1.x.row(i), pair.d1.x.row(i) + test_x.cols(),
                  test_x.row(static_cast<Index>(r)));
        const double* t = prob.target_row(j);
        std::copy(t, t + test_y.cols(), test_y.row(static_cast<Index>(r)));
    }

    RegressionReport report;
    report.split_seed = split_seed;
    report.n_test = test_x.rows();
    report.mse_recovered = fit_variant(prob, recovered, i_in_test, test_x, test_y, lambda,
                                       bandwidth, "recovered", &report.n_train_recovered);
    if (!known.empty())
        report.mse_prior = fit_variant(prob, known, i_in_test, test_x, test_y, lambda, bandwidth,
                                       "prior", &report.n_train_prior);
    report.mse_alldata = fit_variant(prob, truth_train, i_in_test, test_x, test_y, lambda,
                                     bandwidth, "alldata", &report.n_train_alldata);
    return report;
}

namespace {

// Stratified 70/30 split over row indices; every class with at least two
// members contributes to both sides.
void stratified_split(const std::vector<int>& labels, std::uint64_t seed,
                      std::vector<Index>* train, std::vector<Index>* test) {
    std::map<int, std::vector<Index>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i)
        groups[labels[i]].push_back(static_cast<Index>(i));
    std::mt19937_64 rng(seed);
    for (auto& [label, rows] : groups) {
        std::shuffle(rows.begin(), rows.end(), rng);
        std::size_t tc = static_cast<std::size_t>(
            std::llround(0.7 * static_cast<double>(rows.size())));
        if (rows.size() >= 2) tc = std::clamp<std::size_t>(tc, 1, rows.size() - 1);
        else tc = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            (r < tc ? train : test)->push_back(rows[r]);
    }
    std::sort(train->begin(), train->end());
    std::sort(test->begin(), test->end());
}

Matrix gather_rows(const Matrix& x, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), x.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        std::copy(x.row(rows[r]), x.row(rows[r]) + x.cols(), out.row(static_cast<Index>(r)));
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels, const std::vector<Index>& rows) {
    std::vector<int> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        out[r] = labels[static_cast<std::size_t>(rows[r])];
    return out;
}

}  // namespace

ConcatReport eval_concat(const std::vector<std::pair<Index, Index>>& recovered,
                         const DatasetPair& pair, Index k, std::uint64_t split_seed) {
    if (!pair.d1.has_labels() || !pair.d2.has_labels())
        throw BadLabelsError("eval_concat: both domains must be labeled");
    if (recovered.empty()) throw BadCorrespondenceError("eval_concat: no recovered pairs");
    check_pairs_in_range(recovered, pair.d1.x.rows(), pair.d2.x.rows(), "eval_concat");

    const Index m = static_cast<Index>(recovered.size());
    const Index c1 = pair.d1.x.cols();
    const Index c2 = pair.d2.x.cols();
    Matrix concat(m, c1 + c2);
    Matrix only1(m, c1);
    Matrix only2(m, c2);
    std::vector<int> labels(static_cast<std::size_t>(m));
    for (Index r = 0; r < m; ++r) {
        const auto [i, j] = recovered[static_cast<std::size_t>(r)];
        std::copy(pair.d1.x.row(i), pair.d1.x.row(i) + c1, concat.row(r));
        std::copy(pair.d2.x.row(j), pair.d2.x.row(j) + c2, concat.row(r) + c1);
        std::copy(pair.d1.x.row(i), pair.d1.x.row(i) + c1, only1.row(r));
        std::copy(pair.d2.x.row(j), pair.d2.x.row(j) + c2, only2.row(r));
        labels[static_cast<std::size_t>(r)] = pair.d1.labels[static_cast<std::size_t>(i)];
    }

    std::vector<Index> train_rows, test_rows;
    stratified_split(labels, split_seed, &train_rows, &test_rows);
    if (train_rows.empty() || test_rows.empty())
        throw Error("eval_concat: split produced an empty side");
    const auto train_labels = gather_labels(labels, train_rows);
    const auto test_labels = gather_labels(labels, test_rows);
    const Index k_eff = std::min<Index>(k, static_cast<Index>(train_rows.size()));

    const auto score = [&](const Matrix& features) {
        const auto predicted = knn_classify(gather_rows(features, train_rows), train_labels,
                                            gather_rows(features, test_rows), k_eff);
        return accuracy(predicted, test_labels);
    };
    ConcatReport report;
    report.split_seed = split_seed;
    report.concat_accuracy = score(concat);
    report.d1_accuracy = score(only1);
    report.d2_accuracy = score(only2);
    return report;
}

MatchReport match_accuracy(const std::vector<std::pair<Index, Index>>& recovered,
                           const DatasetPair& pair) {
    MatchReport report;
    report.n_recovered = static_cast<Index>(recovered.size());
    report.has_label = pair.d1.has_labels() && pair.d2.has_labels();
    if (recovered.empty()) return report;
    check_pairs_in_range(recovered, pair.d1.x.rows(), pair.d2.x.rows(), "match_accuracy");

    std::vector<Index> truth_of(static_cast<std::size_t>(pair.d1.x.rows()), -1);
    for (const auto& [i, j] : pair.ground_truth) truth_of[static_cast<std::size_t>(i)] = j;
    std::size_t exact = 0;
    std::size_t label = 0;
    for (const auto& [i, j] : recovered) {
        if (truth_of[static_cast<std::size_t>(i)] == j) ++exact;
        if (report.has_label &&
            pair.d1.labels[static_cast<std::size_t>(i)] ==
                pair.d2.labels[static_cast<std::size_t>(j)])
            ++label;
    }
    report.exact = static_cast<double>(exact) / static_cast<double>(recovered.size());
    report.label = static_cast<double>(label) / static_cast<double>(recovered.size());
    return report;
}

MiResult mutual_information(const std::vector<double>& x, const std::vector<double>& y,
                            int bins) {
    if (x.size() != y.size() || x.empty())
        throw BadShapesError("mutual_information: inputs must be equal-length and non-empty");
    if (bins < 2) throw BadShapesError("mutual_information: need at least 2 bins");
    const auto [xlo_it, xhi_it] = std::minmax_element(x.begin(), x.end());
    const auto [ylo_it, yhi_it] = std::minmax_element(y.begin(), y.end());
    const double xlo = *xlo_it, xhi = *xhi_it, ylo = *ylo_it, yhi = *yhi_it;
    if (!(xhi > xlo) || !(yhi > ylo)) return {0.0, true};

    const std::size_t b = static_cast<std::size_t>(bins);
    std::vector<std::size_t> joint(b * b, 0), mx(b, 0), my(b, 0);
    const auto bin_of = [bins](double v, double lo, double hi) {
        const int idx = static_cast<int>((v - lo) / (hi - lo) * bins);
        return static_cast<std::size_t>(std::clamp(idx, 0, bins - 1));
    };
    for (std::size_t s = 0; s < x.size(); ++s) {
        const std::size_t a = bin_of(x[s], xlo, xhi);
        const std::size_t c = bin_of(y[s], ylo, yhi);
        ++joint[a * b + c];
        ++mx[a];
        ++my[c];
    }
    const double n = static_cast<double>(x.size());
    double mi = 0.0;
    for (std::size_t a = 0; a < b; ++a)
        for (std::size_t c = 0; c < b; ++c) {
            const std::size_t nab = joint[a * b + c];
            if (nab == 0) continue;
            mi += (static_cast<double>(nab) / n) *
                  std::log(static_cast<double>(nab) * n /
                           (static_cast<double>(mx[a]) * static_cast<double>(my[c])));
        }
    return {std::max(mi, 0.0), false};
}

std::vector<MiPairReport> eval_mi_recovery(const std::vector<std::pair<Index, Index>>& recovered,
                                           const std::vector<std::pair<Index, Index>>& known,
                                           const DatasetPair& pair, Index top_k, int bins) {
    if (pair.ground_truth.empty())
        throw BadCorrespondenceError("eval_mi_recovery: ground truth is required");
    if (recovered.empty()) throw BadCorrespondenceError("eval_mi_recovery: no recovered pairs");
    if (top_k < 1) throw BadShapesError("eval_mi_recovery: top_k must be positive");
    const Index n1 = pair.d1.x.rows();
    const Index n2 = pair.d2.x.rows();
    check_pairs_in_range(recovered, n1, n2, "eval_mi_recovery (recovered)");
    check_pairs_in_range(known, n1, n2, "eval_mi_recovery (known)");
    check_pairs_in_range(pair.ground_truth, n1, n2, "eval_mi_recovery (truth)");

    const Index c1 = pair.d1.x.cols();
    const Index c2 = pair.d2.x.cols();
    // column samples under one pairing, reused across feature pairs
    const auto columns = [&](const std::vector<std::pair<Index, Index>>& pairing) {
        std::vector<std::vector<double>> a(static_cast<std::size_t>(c1)),
            b(static_cast<std::size_t>(c2));
        for (Index f = 0; f < c1; ++f) a[static_cast<std::size_t>(f)].reserve(pairing.size());
        for (Index f = 0; f < c2; ++f) b[static_cast<std::size_t>(f)].reserve(pairing.size());
        for (const auto& [i, j] : pairing) {
            for (Index f = 0; f < c1; ++f)
                a[static_cast<std::size_t>(f)].push_back(pair.d1.x(i, f));
            for (Index f = 0; f < c2; ++f)
                b[static_cast<std::size_t>(f)].push_back(pair.d2.x(j, f));
        }
        return std::make_pair(std::move(a), std::move(b));
    };

    const auto [ref1, ref2] = columns(pair.ground_truth);
    std::vector<MiPairReport> all;
    all.reserve(static_cast<std::size_t>(c1 * c2));
    for (Index f1 = 0; f1 < c1; ++f1)
        for (Index f2 = 0; f2 < c2; ++f2) {
            MiPairReport r;
            r.f1 = f1;
            r.f2 = f2;
            r.reference = mutual_information(ref1[static_cast<std::size_t>(f1)],
                                             ref2[static_cast<std::size_t>(f2)], bins)
                              .value;
            all.push_back(r);
        }
    std::sort(all.begin(), all.end(), [](const MiPairReport& a, const MiPairReport& b) {
        if (a.reference != b.reference) return a.reference > b.reference;
        return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
    });
    if (static_cast<Index>(all.size()) > top_k) all.resize(static_cast<std::size_t>(top_k));

    const auto [rec1, rec2] = columns(recovered);
    std::vector<std::vector<double>> kn1, kn2;
    if (!known.empty()) std::tie(kn1, kn2) = columns(known);
    for (auto& r : all) {
        r.recovered = mutual_information(rec1[static_cast<std::size_t>(r.f1)],
                                         rec2[static_cast<std::size_t>(r.f2)], bins)
                          .value;
        if (!known.empty())
            r.known_only = mutual_information(kn1[static_cast<std::size_t>(r.f1)],
                                              kn2[static_cast<std::size_t>(r.f2)], bins)
                               .value;
    }
    return all;
}

}  // namespace dta
