#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dta/diffusion_bridge.hpp"
#include "dta/matrix.hpp"

namespace dta {

struct DomainData {
    Matrix x;                 // one row per point
    std::vector<int> labels;  // empty when the domain is unlabeled

    bool has_labels() const { return !labels.empty(); }
};

// A pair of views of the same underlying sample, plus everything needed to
// score an alignment against it.
struct DatasetPair {
    DomainData d1;
    DomainData d2;
    std::vector<std::pair<Index, Index>> ground_truth;  // true (i, j) pairing
    Matrix latent;             // shared latent coordinates per d1 row; may be empty
    double shared_fraction = 1.0;  // fraction of d1 rows with a true partner
    std::string sidecar_json;  // generator name, parameters and seed
};

// Swiss roll / S-curve: a common latent rectangle (u, w) with
// u ~ U[1.5pi, 4.5pi], w ~ U[0, 2], pushed through
//   d1 = (u cos u, w, u sin u)
//   d2 = (sin u', w, sign(u')(cos u' - 1)),  u' = u - 3pi in [-1.5pi, 1.5pi]
// plus iid Gaussian coordinate noise.  Unlabeled, identity ground truth,
// latent columns (u, w).
DatasetPair gen_swiss_scurve(Index n, double noise, std::uint64_t seed);

// Two interleaved helices over s ~ U[0, 4pi]:
//   d1 = (cos s, sin s, s/4pi),  d2 = (cos(s+pi), sin(s+pi), s/4pi)
// plus noise.  Unlabeled, identity ground truth, latent column (s).
DatasetPair gen_double_helix(Index n, double noise, std::uint64_t seed);

// Three Gaussian classes (covariance 0.5*I) whose means collapse a different
// class pair in each domain: d1 means (0,0), (0,0.3), (3,3); d2 means (3,3),
// (0,0.3), (0,0).  Labeled on both sides, identity ground truth.
DatasetPair gen_gaussian_blobs(Index n_per_class, std::uint64_t seed);

// ----- IDX image container -------------------------------------------------

struct IdxImages {
    Index count = 0;
    Index rows = 0;
    Index cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major per image

    const std::uint8_t* image(Index i) const { return pixels.data() + i * rows * cols; }
};

IdxImages read_idx_images(const std::string& path);
std::vector<std::uint8_t> read_idx_labels(const std::string& path);
void write_idx_images(const std::string& path, const IdxImages& images);
void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels);

// Two views of one image set: domain 1 flattens the originals with
// intensities scaled to [0, 1]; domain 2 is the 2x average-pool downscale,
// rotated by rotation_deg about the image centre (bilinear, zero fill), then
// Gaussian-blurred (truncated at 3 sigma, zero-padded borders).  With
// rotation_deg = 0 and blur_sigma = 0 domain 2 is the pure downscale.  The
// seed drives no randomness (the distortion chain is deterministic); it is
// recorded in the sidecar for interface uniformity.
DatasetPair gen_mnist_double(const IdxImages& images, const std::vector<std::uint8_t>& labels,
                             double rotation_deg = 45.0, double blur_sigma = 1.0,
                             std::uint64_t seed = 0);

// Restricts d1 to classes in keep1 and d2 to classes in keep2, keeps only
// ground-truth pairs that survive on both sides, and records the fraction of
// d1 rows that still have a partner.  Disjoint keep sets raise
// NoSharedMassError.  Deterministic; the seed is recorded only.
DatasetPair gen_partial_overlap(const DatasetPair& base, const std::vector<int>& keep1,
                                const std::vector<int>& keep2, std::uint64_t seed = 0);

// Uniform sample of max(1, round(fraction * |truth|)) distinct ground-truth
// pairs, returned sorted by i.
CorrespondenceSet sample_correspondences(const std::vector<std::pair<Index, Index>>& truth,
                                         double fraction, std::uint64_t seed);

// Loads two feature CSVs plus a ground-truth pairing CSV (header "i,j").
// A column named label_col (default "label"), when present, is read as
// integer class labels.
DatasetPair load_csv_pair(const std::string& path1, const std::string& path2,
                          const std::string& truth_path,
                          const std::string& label_col = "label");

}  // namespace dta
