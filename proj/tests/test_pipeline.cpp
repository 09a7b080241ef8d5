#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "dta/datasets.hpp"
#include "dta/error.hpp"
#include "dta/evaluation.hpp"
#include "dta/pipeline.hpp"

using dta::AlignConfig;
using dta::AlignResult;
using dta::DatasetPair;
using dta::Index;

namespace {

AlignConfig small_config() {
    AlignConfig cfg;
    cfg.kernel.k = 5;
    cfg.kernel.alpha = 10.0;
    cfg.kernel.t = 5;
    return cfg;
}

}  // namespace

TEST_CASE("full alignment on blobs respects the transport geometry") {
    const DatasetPair pair = dta::gen_gaussian_blobs(30, 61);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.1, 2);
    AlignConfig cfg = small_config();
    cfg.mass = 0.8;
    const AlignResult res = dta::align(pair.d1.x, pair.d2.x, corr, cfg);

    const Index n = pair.d1.x.rows();
    REQUIRE(res.plan.t.rows() == n);
    REQUIRE(res.plan.t.cols() == n);
    CHECK_FALSE(res.mass_auto);
    CHECK(res.mass_fraction == doctest::Approx(0.8));
    CHECK(res.plan.mass == doctest::Approx(0.8 * 1.0).epsilon(1e-9));

    const double cap = 1.0 / static_cast<double>(n);
    double mass = 0.0;
    for (Index i = 0; i < n; ++i) {
        double row = 0.0;
        for (Index j = 0; j < n; ++j) {
            CHECK(res.plan.t(i, j) >= -1e-12);
            row += res.plan.t(i, j);
        }
        CHECK(row <= cap + 1e-9);
        mass += row;
    }
    CHECK(mass == doctest::Approx(res.plan.mass).epsilon(1e-9));

    // pairs are injective and in range
    std::set<Index> used;
    for (const auto& [i, j] : res.pairs) {
        CHECK(i >= 0);
        CHECK(i < n);
        CHECK(j >= 0);
        CHECK(j < n);
        CHECK(used.insert(j).second);
    }
    CHECK(res.pairs.size() > 0);

    // cost bounds without labels
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            CHECK(res.cost(i, j) >= -1e-12);
            CHECK(res.cost(i, j) <= 2.0 + 1e-12);
        }

    REQUIRE(res.projection.rows() == n);
    REQUIRE(res.projection.cols() == pair.d2.x.cols());
    REQUIRE(res.projection_mask.size() == static_cast<std::size_t>(n));
}

TEST_CASE("auto mass produces the NTC curve and an in-range selection") {
    const DatasetPair pair = dta::gen_gaussian_blobs(20, 62);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.15, 3);
    AlignConfig cfg = small_config();
    cfg.mass_grid_points = 8;
    const AlignResult res = dta::align(pair.d1.x, pair.d2.x, corr, cfg);
    CHECK(res.mass_auto);
    REQUIRE(res.curve.size() == 8);
    CHECK(res.mass_fraction >= 0.05 - 1e-12);
    CHECK(res.mass_fraction <= 1.0 + 1e-12);
    CHECK(res.plan.mass == doctest::Approx(res.mass_fraction).epsilon(1e-9));
}

TEST_CASE("label augmentation requires labels and shifts the cost scale") {
    const DatasetPair pair = dta::gen_gaussian_blobs(20, 63);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.15, 4);
    AlignConfig cfg = small_config();
    cfg.use_labels = true;
    cfg.mass = 0.9;
    CHECK_THROWS_AS(dta::align(pair.d1.x, pair.d2.x, corr, cfg), dta::BadLabelsError);

    const AlignResult res =
        dta::align(pair.d1.x, pair.d2.x, corr, cfg, &pair.d1.labels, &pair.d2.labels);
    double top = 0.0;
    for (Index i = 0; i < res.cost.rows(); ++i)
        for (Index j = 0; j < res.cost.cols(); ++j) top = std::max(top, res.cost(i, j));
    CHECK(top > 1.0);  // cross-class entries carry the +1 shift
    CHECK(top <= 3.0 + 1e-12);
}

TEST_CASE("entropic mode solves the same problem with scaling iterations") {
    const DatasetPair pair = dta::gen_gaussian_blobs(15, 64);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.2, 5);
    AlignConfig cfg = small_config();
    cfg.mass = 0.7;
    cfg.entropic = true;
    cfg.epsilon = 5e-3;
    const AlignResult res = dta::align(pair.d1.x, pair.d2.x, corr, cfg);
    CHECK(res.plan.entropic);
    CHECK(res.plan.mass == doctest::Approx(0.7).epsilon(1e-5));
    CHECK(res.pairs.size() > 0);  // argmax pairing still applies

    AlignConfig exact = small_config();
    exact.mass = 0.7;
    const AlignResult ref = dta::align(pair.d1.x, pair.d2.x, corr, exact);
    CHECK(res.plan.objective >= ref.plan.objective - 1e-6);
}

TEST_CASE("joint embedding places correspondences close together") {
    const DatasetPair pair = dta::gen_gaussian_blobs(15, 65);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.2, 6);
    AlignConfig cfg = small_config();
    cfg.mass = 0.9;
    cfg.embed_dims = 2;
    const AlignResult res = dta::align(pair.d1.x, pair.d2.x, corr, cfg);
    const Index n = pair.d1.x.rows();
    REQUIRE(res.embedding.coords.rows() == 2 * n);
    REQUIRE(res.embedding.coords.cols() == 2);
    REQUIRE(res.embedding.n1 == n);
    REQUIRE(res.embedding.eigenvalues.size() == 2);
}

TEST_CASE("invalid masses and configs are rejected up front") {
    const DatasetPair pair = dta::gen_gaussian_blobs(10, 66);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.2, 7);
    AlignConfig cfg = small_config();
    cfg.mass = 1.5;
    CHECK_THROWS_AS(dta::align(pair.d1.x, pair.d2.x, corr, cfg), dta::InfeasibleMassError);
    cfg.mass = 0.0;
    CHECK_THROWS_AS(dta::align(pair.d1.x, pair.d2.x, corr, cfg), dta::InfeasibleMassError);

    AlignConfig bad = small_config();
    bad.kernel.k = 1000;  // larger than either sample
    CHECK_THROWS_AS(dta::align(pair.d1.x, pair.d2.x, corr, bad), dta::BadShapesError);

    CHECK_THROWS_AS(dta::align(pair.d1.x, pair.d2.x, {}, small_config()),
                    dta::BadCorrespondenceError);
}

TEST_CASE("alignment recovers the pairing structure on easy labeled blobs") {
    const DatasetPair pair = dta::gen_gaussian_blobs(40, 67);
    const auto corr = dta::sample_correspondences(pair.ground_truth, 0.05, 8);
    AlignConfig cfg;
    cfg.kernel.k = 10;
    cfg.kernel.alpha = 10.0;
    cfg.kernel.t = 10;
    cfg.use_labels = true;
    cfg.mass = 1.0;
    const AlignResult res =
        dta::align(pair.d1.x, pair.d2.x, corr, cfg, &pair.d1.labels, &pair.d2.labels);
    const dta::MatchReport match = dta::match_accuracy(res.pairs, pair);
    CHECK(match.label > 0.9);  // classes must line up almost everywhere
    const dta::DomainAdaptationReport da = dta::eval_domain_adaptation(res.plan.t, pair, 10);
    CHECK(da.accuracy > 0.8);
}
