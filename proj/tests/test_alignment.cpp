#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dta/alignment.hpp"
#include "dta/error.hpp"
#include "dta/kernel_graph.hpp"
#include "oracles.hpp"

using dta::Index;
using dta::Matrix;

namespace {

Matrix path_affinity(Index n) {
    Matrix w(n, n);
    for (Index i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
    return w;
}

}  // namespace

TEST_CASE("identity plan projects targets verbatim") {
    std::mt19937_64 rng(11);
    const Matrix y = oracle::random_matrix(4, 3, rng);
    std::vector<bool> mask;
    const Matrix proj = dta::barycentric_project(Matrix::identity(4), y, &mask);
    CHECK(dta::max_abs_diff(proj, y) <= 1e-15);
    REQUIRE(mask.size() == 4);
    for (bool b : mask) CHECK(b);
}

TEST_CASE("split rows average their targets, empty rows are masked out") {
    Matrix t(3, 2);
    t(0, 0) = 0.5;
    t(0, 1) = 0.5;
    t(1, 0) = 0.2;  // rescaled to weight 1 on target 0
    Matrix y(2, 2);
    y(0, 0) = 1.0;
    y(1, 0) = 3.0;
    y(1, 1) = 4.0;
    std::vector<bool> mask;
    const Matrix proj = dta::barycentric_project(t, y, &mask);
    CHECK(proj(0, 0) == doctest::Approx(2.0));
    CHECK(proj(0, 1) == doctest::Approx(2.0));
    CHECK(proj(1, 0) == doctest::Approx(1.0));
    CHECK(proj(1, 1) == doctest::Approx(0.0));
    CHECK(proj(2, 0) == 0.0);
    CHECK(proj(2, 1) == 0.0);
    CHECK(mask == std::vector<bool>{true, true, false});
}

TEST_CASE("a permutation plan permutes the targets") {
    Matrix t(3, 3);
    t(0, 2) = t(1, 0) = t(2, 1) = 1.0 / 3.0;
    std::mt19937_64 rng(12);
    const Matrix y = oracle::random_matrix(3, 2, rng);
    const Matrix proj = dta::barycentric_project(t, y);
    for (Index c = 0; c < 2; ++c) {
        CHECK(proj(0, c) == doctest::Approx(y(2, c)));
        CHECK(proj(1, c) == doctest::Approx(y(0, c)));
        CHECK(proj(2, c) == doctest::Approx(y(1, c)));
    }
}

TEST_CASE("projection rejects mismatched shapes") {
    CHECK_THROWS_AS(dta::barycentric_project(Matrix(3, 2), Matrix(3, 2)), dta::BadShapesError);
}

TEST_CASE("cross similarity matches the naive two-product oracle") {
    std::mt19937_64 rng(13);
    const Matrix w1 = oracle::random_matrix(4, 4, rng);
    const Matrix w2 = oracle::random_matrix(3, 3, rng);
    const Matrix t = oracle::random_matrix(4, 3, rng);

    CHECK(dta::max_abs_diff(dta::cross_similarity(w1, Matrix(4, 3), w2), Matrix(4, 3)) == 0.0);

    const Matrix doubled = dta::cross_similarity(Matrix::identity(4), t, Matrix::identity(3));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(doubled(i, j) == doctest::Approx(2.0 * t(i, j)));

    Matrix expected = oracle::naive_matmul(w1, t);
    const Matrix right = oracle::naive_matmul(t, w2);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 3; ++j) expected(i, j) += right(i, j);
    CHECK(dta::max_abs_diff(dta::cross_similarity(w1, t, w2), expected) <= 1e-12);
}

TEST_CASE("joint affinity assembles the weighted blocks symmetrically") {
    std::mt19937_64 rng(14);
    Matrix w1 = oracle::random_matrix(3, 3, rng);
    Matrix w2 = oracle::random_matrix(2, 2, rng);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < i; ++j) w1(i, j) = w1(j, i);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < i; ++j) w2(i, j) = w2(j, i);
    const Matrix w12 = oracle::random_matrix(3, 2, rng);

    const double mu = 0.5;
    const dta::JointAffinity joint = dta::joint_affinity(w1, w2, w12, mu);
    REQUIRE(joint.w.rows() == 5);
    REQUIRE(joint.n1 == 3);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(joint.w(i, j) == doctest::Approx(mu * w1(i, j)));
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            CHECK(joint.w(3 + i, 3 + j) == doctest::Approx(mu * w2(i, j)));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j) {
            CHECK(joint.w(i, 3 + j) == doctest::Approx((1.0 - mu) * w12(i, j)));
            CHECK(joint.w(3 + j, i) == doctest::Approx((1.0 - mu) * w12(i, j)));
        }
    CHECK(dta::max_abs_diff(joint.w, dta::transpose(joint.w)) == 0.0);

    const dta::JointAffinity pure = dta::joint_affinity(w1, w2, w12, 1.0);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j) CHECK(pure.w(i, 3 + j) == 0.0);

    const dta::JointAffinity bipartite = dta::joint_affinity(w1, w2, w12, 0.0);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(bipartite.w(i, j) == 0.0);

    CHECK_THROWS_AS(dta::joint_affinity(w1, w2, Matrix(2, 3), mu), dta::BadShapesError);
}

TEST_CASE("path graph embeds with a monotone second eigenvector") {
    const Matrix w = path_affinity(4);
    const dta::Embedding emb = dta::spectral_embedding(w, 1);
    REQUIRE(emb.coords.rows() == 4);
    REQUIRE(emb.coords.cols() == 1);
    REQUIRE(emb.eigenvalues.size() == 1);
    CHECK(emb.eigenvalues[0] > 1e-8);  // trivial eigenvalue excluded
    CHECK(emb.eigenvalues[0] < 2.0 + 1e-9);
    // the Fiedler coordinate orders a path monotonically
    bool increasing = true, decreasing = true;
    for (Index i = 1; i < 4; ++i) {
        if (emb.coords(i, 0) <= emb.coords(i - 1, 0)) increasing = false;
        if (emb.coords(i, 0) >= emb.coords(i - 1, 0)) decreasing = false;
    }
    CHECK((increasing || decreasing));
    CHECK(emb.coords(0, 0) > 0.0);  // sign convention: first coordinate positive
    double norm = 0.0;
    for (Index i = 0; i < 4; ++i) norm += emb.coords(i, 0) * emb.coords(i, 0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("random-walk eigenvalues are ascending and inside [0, 2]") {
    std::mt19937_64 rng(15);
    Matrix w = oracle::random_matrix(8, 8, rng, 0.05, 1.0);
    for (Index i = 0; i < 8; ++i) {
        w(i, i) = 0.0;
        for (Index j = 0; j < i; ++j) w(i, j) = w(j, i);
    }
    const dta::Embedding emb = dta::spectral_embedding(w, 5);
    REQUIRE(emb.eigenvalues.size() == 5);
    for (std::size_t i = 0; i < emb.eigenvalues.size(); ++i) {
        CHECK(emb.eigenvalues[i] >= -1e-9);
        CHECK(emb.eigenvalues[i] <= 2.0 + 1e-9);
        if (i > 0) CHECK(emb.eigenvalues[i] >= emb.eigenvalues[i - 1] - 1e-12);
    }
    CHECK(emb.eigenvalues[0] > 1e-8);
}

TEST_CASE("embedding is deterministic and permutation-consistent") {
    std::mt19937_64 rng(16);
    Matrix w = oracle::random_matrix(6, 6, rng, 0.05, 1.0);
    for (Index i = 0; i < 6; ++i) {
        w(i, i) = 0.0;
        for (Index j = 0; j < i; ++j) w(i, j) = w(j, i);
    }
    const dta::Embedding a = dta::spectral_embedding(w, 3);
    const dta::Embedding b = dta::spectral_embedding(w, 3);
    CHECK(dta::max_abs_diff(a.coords, b.coords) == 0.0);

    // relabelling the vertices permutes the rows (up to a global sign fixed
    // by the first-coordinate convention, compare absolute values)
    std::vector<Index> perm{3, 0, 5, 1, 4, 2};
    Matrix wp(6, 6);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) wp(i, j) = w(perm[static_cast<std::size_t>(i)],
                                                   perm[static_cast<std::size_t>(j)]);
    const dta::Embedding p = dta::spectral_embedding(wp, 3);
    for (Index i = 0; i < 6; ++i)
        for (Index c = 0; c < 3; ++c)
            CHECK(std::abs(p.coords(i, c)) ==
                  doctest::Approx(std::abs(a.coords(perm[static_cast<std::size_t>(i)], c)))
                      .epsilon(1e-7));
}

TEST_CASE("unnormalized variant solves Deg - W") {
    const Matrix w = path_affinity(5);
    const dta::Embedding emb = dta::spectral_embedding(w, 2, dta::LaplacianVariant::unnormalized);
    REQUIRE(emb.eigenvalues.size() == 2);
    // eigenvalues of the path Laplacian: 2 - 2 cos(k pi / 5)
    CHECK(emb.eigenvalues[0] ==
          doctest::Approx(2.0 - 2.0 * std::cos(M_PI / 5.0)).epsilon(1e-9));
    CHECK(emb.eigenvalues[1] ==
          doctest::Approx(2.0 - 2.0 * std::cos(2.0 * M_PI / 5.0)).epsilon(1e-9));
}

TEST_CASE("asking for too many coordinates or asymmetric input fails") {
    const Matrix w = path_affinity(3);
    CHECK_THROWS_AS(dta::spectral_embedding(w, 3), dta::BadShapesError);  // only 2 non-trivial
    CHECK_THROWS_AS(dta::spectral_embedding(w, 0), dta::BadShapesError);
    Matrix asym = w;
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(dta::spectral_embedding(asym, 1), dta::BadShapesError);
}

TEST_CASE("disconnected joint graphs report their component sizes") {
    Matrix w1 = path_affinity(3);
    Matrix w2 = path_affinity(2);
    const Matrix w12(3, 2);  // no cross mass
    const dta::JointAffinity joint = dta::joint_affinity(w1, w2, w12, 1.0);
    try {
        dta::joint_embedding(joint, 1);
        FAIL("expected DisconnectedGraphError");
    } catch (const dta::DisconnectedGraphError& e) {
        REQUIRE(e.component_sizes.size() == 2);
        CHECK(e.component_sizes[0] == 3);
        CHECK(e.component_sizes[1] == 2);
    }
}

TEST_CASE("identical domains bridged by an identity plan embed on top of each other") {
    std::mt19937_64 rng(17);
    const Matrix x = oracle::random_matrix(12, 3, rng);
    dta::KernelConfig cfg;
    cfg.k = 4;
    cfg.alpha = 4.0;
    const Matrix w = dta::decay_kernel_points(x, cfg);
    Matrix tnorm = Matrix::identity(12);
    const Matrix w12 = dta::cross_similarity(w, tnorm, w);
    const dta::JointAffinity joint = dta::joint_affinity(w, w, w12, 0.5);
    const dta::Embedding emb = dta::joint_embedding(joint, 2);
    REQUIRE(emb.n1 == 12);
    REQUIRE(emb.coords.rows() == 24);
    for (Index i = 0; i < 12; ++i)
        for (Index c = 0; c < 2; ++c)
            CHECK(emb.coords(i, c) == doctest::Approx(emb.coords(12 + i, c)).epsilon(1e-6));
}
