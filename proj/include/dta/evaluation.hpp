#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dta/datasets.hpp"
#include "dta/matrix.hpp"

namespace dta {

// Brute-force Euclidean kNN.  Majority vote; vote ties broken by the smaller
// mean neighbor distance, then by the smaller label.
std::vector<int> knn_classify(const Matrix& train_x, const std::vector<int>& train_labels,
                              const Matrix& test_x, Index k);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// Gaussian-kernel ridge regression: solve (G + lambda*I) C = Y on the train
// Gram matrix, predict with the cross-Gram.  bandwidth <= 0 selects the
// median pairwise train distance.  Y may have several columns.
Matrix krr_fit_predict(const Matrix& train_x, const Matrix& train_y, const Matrix& test_x,
                       double lambda = 1e-2, double bandwidth = 0.0);

double mean_squared_error(const Matrix& predicted, const Matrix& expected);

struct DomainAdaptationReport {
    double accuracy = 0.0;
    Index n_scored = 0;   // rows that carried transport mass and were classified
    Index n_skipped = 0;  // rows with an all-zero plan row
};

// Trains kNN on domain-2 features and labels, classifies the barycentric
// projections of domain-1 rows under the plan, scores against domain-1
// labels.
DomainAdaptationReport eval_domain_adaptation(const Matrix& plan, const DatasetPair& pair,
                                              Index k = 10);

enum class RegressionTarget { latent, domain2 };

struct RegressionReport {
    double mse_recovered = 0.0;  // trained on the recovered pairing
    double mse_prior = 0.0;      // trained on the known correspondences only
    double mse_alldata = 0.0;    // trained on the full ground truth
    Index n_train_recovered = 0;
    Index n_train_prior = 0;
    Index n_train_alldata = 0;
    Index n_test = 0;
    std::uint64_t split_seed = 0;
};

// Regression protocol: split the ground truth 70/30 by seed; each variant
// trains a KRR from domain-1 features to the target representation using
// only its pairs whose domain-1 index falls on the train side; all variants
// share the same held-out test pairs and report the mean squared error over
// test entries.
RegressionReport eval_regression(const std::vector<std::pair<Index, Index>>& recovered,
                                 const std::vector<std::pair<Index, Index>>& known,
                                 const DatasetPair& pair, RegressionTarget target,
                                 double lambda = 1e-2, double bandwidth = 0.0,
                                 std::uint64_t split_seed = 0);

struct ConcatReport {
    double concat_accuracy = 0.0;
    double d1_accuracy = 0.0;
    double d2_accuracy = 0.0;
    std::uint64_t split_seed = 0;
};

// Concatenates the matched feature vectors, then runs a stratified 70/30
// kNN classification; the single-domain columns rerun the same split on each
// domain's features alone.
ConcatReport eval_concat(const std::vector<std::pair<Index, Index>>& recovered,
                         const DatasetPair& pair, Index k = 10, std::uint64_t split_seed = 0);

struct MatchReport {
    double exact = 0.0;  // fraction of recovered pairs equal to the true pair
    double label = 0.0;  // fraction landing on the correct class
    bool has_label = false;
    Index n_recovered = 0;
};

MatchReport match_accuracy(const std::vector<std::pair<Index, Index>>& recovered,
                           const DatasetPair& pair);

struct MiResult {
    double value = 0.0;  // nats
    bool degenerate = false;
};

// Plug-in estimator on an equal-width bins x bins histogram spanning each
// variable's observed range.  A constant variable yields 0 with the
// degenerate flag set.
MiResult mutual_information(const std::vector<double>& x, const std::vector<double>& y,
                            int bins = 16);

struct MiPairReport {
    Index f1 = 0;  // domain-1 feature column
    Index f2 = 0;  // domain-2 feature column
    double reference = 0.0;   // MI under the true pairing
    double known_only = 0.0;  // MI from the known correspondences alone
    double recovered = 0.0;   // MI under the recovered pairing
};

// Scores every cross-domain feature pair under the true pairing, keeps the
// top_k by reference MI, and recomputes each under the known and recovered
// pairings.
std::vector<MiPairReport> eval_mi_recovery(const std::vector<std::pair<Index, Index>>& recovered,
                                           const std::vector<std::pair<Index, Index>>& known,
                                           const DatasetPair& pair, Index top_k = 25,
                                           int bins = 16);

}  // namespace dta
