#include "dta/datasets.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "dta/error.hpp"
#include "dta/io.hpp"

namespace dta {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<Index, Index>> identity_truth(Index n) {
    std::vector<std::pair<Index, Index>> t;
    t.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) t.emplace_back(i, i);
    return t;
}

}  // namespace

DatasetPair gen_swiss_scurve(Index n, double noise, std::uint64_t seed) {
    if (n < 2) throw BadShapesError("gen_swiss_scurve: need at least 2 points");
    if (noise < 0.0) throw BadShapesError("gen_swiss_scurve: noise must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    DatasetPair pair;
    pair.d1.x = Matrix(n, 3);
    pair.d2.x = Matrix(n, 3);
    pair.latent = Matrix(n, 2);
    for (Index i = 0; i < n; ++i) {
        const double u = 1.5 * kPi + 3.0 * kPi * uni(rng);  // [1.5pi, 4.5pi]
        const double w = 2.0 * uni(rng);
        const double us = u - 3.0 * kPi;  // [-1.5pi, 1.5pi]
        pair.latent(i, 0) = u;
        pair.latent(i, 1) = w;
        pair.d1.x(i, 0) = u * std::cos(u);
        pair.d1.x(i, 1) = w;
        pair.d1.x(i, 2) = u * std::sin(u);
        pair.d2.x(i, 0) = std::sin(us);
        pair.d2.x(i, 1) = w;
        pair.d2.x(i, 2) = (us < 0.0 ? -1.0 : 1.0) * (std::cos(us) - 1.0);
    }
    if (noise > 0.0) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < 3; ++j) pair.d1.x(i, j) += noise * gauss(rng);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < 3; ++j) pair.d2.x(i, j) += noise * gauss(rng);
    }
    pair.ground_truth = identity_truth(n);
    pair.sidecar_json = json{{"generator", "swiss_scurve"},
                             {"n", n},
                             {"noise", noise},
                             {"seed", seed},
                             {"u_range", {1.5 * kPi, 4.5 * kPi}},
                             {"w_range", {0.0, 2.0}}}
                            .dump();
    return pair;
}

DatasetPair gen_double_helix(Index n, double noise, std::uint64_t seed) {
    if (n < 2) throw BadShapesError("gen_double_helix: need at least 2 points");
    if (noise < 0.0) throw BadShapesError("gen_double_helix: noise must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    DatasetPair pair;
    pair.d1.x = Matrix(n, 3);
    pair.d2.x = Matrix(n, 3);
    pair.latent = Matrix(n, 1);
    for (Index i = 0; i < n; ++i) {
        const double s = 4.0 * kPi * uni(rng);
        pair.latent(i, 0) = s;
        pair.d1.x(i, 0) = std::cos(s);
        pair.d1.x(i, 1) = std::sin(s);
        pair.d1.x(i, 2) = s / (4.0 * kPi);
        // the second strand runs half a turn ahead at the same height
        pair.d2.x(i, 0) = std::cos(s + kPi);
        pair.d2.x(i, 1) = std::sin(s + kPi);
        pair.d2.x(i, 2) = s / (4.0 * kPi);
    }
    if (noise > 0.0) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < 3; ++j) pair.d1.x(i, j) += noise * gauss(rng);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < 3; ++j) pair.d2.x(i, j) += noise * gauss(rng);
    }
    pair.ground_truth = identity_truth(n);
    pair.sidecar_json = json{{"generator", "double_helix"},
                             {"n", n},
                             {"noise", noise},
                             {"seed", seed},
                             {"s_range", {0.0, 4.0 * kPi}}}
                            .dump();
    return pair;
}

DatasetPair gen_gaussian_blobs(Index n_per_class, std::uint64_t seed) {
    if (n_per_class < 5) throw BadShapesError("gen_gaussian_blobs: need at least 5 per class");
    // Each domain collapses a different class pair: A/B coincide in domain 1,
    // B/C in domain 2, so neither domain separates all three on its own.
    static constexpr double kMeans1[3][2] = {{0.0, 0.0}, {0.0, 0.3}, {3.0, 3.0}};
    static constexpr double kMeans2[3][2] = {{3.0, 3.0}, {0.0, 0.3}, {0.0, 0.0}};
    const double sd = std::sqrt(0.5);  // covariance 0.5 * I

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index n = 3 * n_per_class;

    DatasetPair pair;
    pair.d1.x = Matrix(n, 2);
    pair.d2.x = Matrix(n, 2);
    pair.d1.labels.resize(static_cast<std::size_t>(n));
    pair.d2.labels.resize(static_cast<std::size_t>(n));
    Index row = 0;
    for (int c = 0; c < 3; ++c) {
        for (Index p = 0; p < n_per_class; ++p, ++row) {
            pair.d1.x(row, 0) = kMeans1[c][0] + sd * gauss(rng);
            pair.d1.x(row, 1) = kMeans1[c][1] + sd * gauss(rng);
            pair.d2.x(row, 0) = kMeans2[c][0] + sd * gauss(rng);
            pair.d2.x(row, 1) = kMeans2[c][1] + sd * gauss(rng);
            pair.d1.labels[static_cast<std::size_t>(row)] = c;
            pair.d2.labels[static_cast<std::size_t>(row)] = c;
        }
    }
    pair.ground_truth = identity_truth(n);
    pair.sidecar_json = json{{"generator", "gaussian_blobs"},
                             {"n_per_class", n_per_class},
                             {"seed", seed},
                             {"covariance_scale", 0.5}}
                            .dump();
    return pair;
}

// ----- IDX ------------------------------------------------------------------

namespace {

std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw BadFileError(path + ": truncated IDX header");
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ofstream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

IdxImages read_idx_images(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadFileError("cannot open: " + path);
    if (read_be32(in, path) != 0x00000803u)
        throw BadFileError(path + ": bad IDX magic for an image file");
    IdxImages img;
    img.count = read_be32(in, path);
    img.rows = read_be32(in, path);
    img.cols = read_be32(in, path);
    img.pixels.resize(static_cast<std::size_t>(img.count * img.rows * img.cols));
    if (!in.read(reinterpret_cast<char*>(img.pixels.data()),
                 static_cast<std::streamsize>(img.pixels.size())))
        throw BadFileError(path + ": truncated IDX pixel data");
    return img;
}

std::vector<std::uint8_t> read_idx_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadFileError("cannot open: " + path);
    if (read_be32(in, path) != 0x00000801u)
        throw BadFileError(path + ": bad IDX magic for a label file");
    const std::uint32_t count = read_be32(in, path);
    std::vector<std::uint8_t> labels(count);
    if (!in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(count)))
        throw BadFileError(path + ": truncated IDX label data");
    return labels;
}

void write_idx_images(const std::string& path, const IdxImages& images) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadFileError("cannot open for writing: " + path);
    write_be32(out, 0x00000803u);
    write_be32(out, static_cast<std::uint32_t>(images.count));
    write_be32(out, static_cast<std::uint32_t>(images.rows));
    write_be32(out, static_cast<std::uint32_t>(images.cols));
    out.write(reinterpret_cast<const char*>(images.pixels.data()),
              static_cast<std::streamsize>(images.pixels.size()));
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadFileError("cannot open for writing: " + path);
    write_be32(out, 0x00000801u);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
}

// ----- image distortions ----------------------------------------------------

namespace {

// 2x downscale by averaging each 2x2 block; equals a bilinear resample at
// half-pixel centres.
std::vector<double> downscale2(const std::uint8_t* px, Index h, Index w) {
    std::vector<double> out(static_cast<std::size_t>((h / 2) * (w / 2)));
    for (Index r = 0; r < h / 2; ++r)
        for (Index c = 0; c < w / 2; ++c) {
            const double s = px[(2 * r) * w + 2 * c] + px[(2 * r) * w + 2 * c + 1] +
                             px[(2 * r + 1) * w + 2 * c] + px[(2 * r + 1) * w + 2 * c + 1];
            out[static_cast<std::size_t>(r * (w / 2) + c)] = s / (4.0 * 255.0);
        }
    return out;
}

std::vector<double> rotate_bilinear(const std::vector<double>& img, Index h, Index w,
                                    double degrees) {
    if (degrees == 0.0) return img;
    const double th = degrees * kPi / 180.0;
    const double ct = std::cos(th);
    const double st = std::sin(th);
    const double cy = (static_cast<double>(h) - 1.0) / 2.0;
    const double cx = (static_cast<double>(w) - 1.0) / 2.0;
    std::vector<double> out(img.size(), 0.0);
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < w; ++c) {
            const double dr = static_cast<double>(r) - cy;
            const double dc = static_cast<double>(c) - cx;
            const double sr = cy + ct * dr + st * dc;
            const double sc = cx - st * dr + ct * dc;
            const Index r0 = static_cast<Index>(std::floor(sr));
            const Index c0 = static_cast<Index>(std::floor(sc));
            const double fr = sr - static_cast<double>(r0);
            const double fc = sc - static_cast<double>(c0);
            double acc = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Index rr = r0 + a;
                    const Index cc = c0 + b;
                    if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;  // zero fill
                    const double wgt = (a ? fr : 1.0 - fr) * (b ? fc : 1.0 - fc);
                    acc += wgt * img[static_cast<std::size_t>(rr * w + cc)];
                }
            out[static_cast<std::size_t>(r * w + c)] = acc;
        }
    }
    return out;
}

std::vector<double> gaussian_blur(const std::vector<double>& img, Index h, Index w, double sigma) {
    if (sigma <= 0.0) return img;
    const Index radius = static_cast<Index>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double total = 0.0;
    for (Index k = -radius; k <= radius; ++k) {
        const double v = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = v;
        total += v;
    }
    for (double& v : kernel) v /= total;

    // separable passes, zero padding outside the frame
    std::vector<double> tmp(img.size(), 0.0);
    for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) {
            double acc = 0.0;
            for (Index k = -radius; k <= radius; ++k) {
                const Index cc = c + k;
                if (cc >= 0 && cc < w)
                    acc += kernel[static_cast<std::size_t>(k + radius)] *
                           img[static_cast<std::size_t>(r * w + cc)];
            }
            tmp[static_cast<std::size_t>(r * w + c)] = acc;
        }
    std::vector<double> out(img.size(), 0.0);
    for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) {
            double acc = 0.0;
            for (Index k = -radius; k <= radius; ++k) {
                const Index rr = r + k;
                if (rr >= 0 && rr < h)
                    acc += kernel[static_cast<std::size_t>(k + radius)] *
                           tmp[static_cast<std::size_t>(rr * w + c)];
            }
            out[static_cast<std::size_t>(r * w + c)] = acc;
        }
    return out;
}

}  // namespace

DatasetPair gen_mnist_double(const IdxImages& images, const std::vector<std::uint8_t>& labels,
                             double rotation_deg, double blur_sigma, std::uint64_t seed) {
    if (images.count < 1) throw BadShapesError("gen_mnist_double: empty image set");
    if (static_cast<Index>(labels.size()) != images.count)
        throw BadLabelsError("gen_mnist_double: label count does not match image count");
    if (images.rows % 2 != 0 || images.cols % 2 != 0)
        throw BadShapesError("gen_mnist_double: image sides must be even for the 2x downscale");
    if (blur_sigma < 0.0) throw BadShapesError("gen_mnist_double: blur sigma must be >= 0");

    const Index h = images.rows / 2;
    const Index w = images.cols / 2;
    DatasetPair pair;
    pair.d1.x = Matrix(images.count, images.rows * images.cols);
    pair.d2.x = Matrix(images.count, h * w);
    pair.d1.labels.resize(static_cast<std::size_t>(images.count));
    pair.d2.labels.resize(static_cast<std::size_t>(images.count));
    for (Index i = 0; i < images.count; ++i) {
        const std::uint8_t* px = images.image(i);
        for (Index p = 0; p < images.rows * images.cols; ++p)
            pair.d1.x(i, p) = px[p] / 255.0;
        const auto down = downscale2(px, images.rows, images.cols);
        const auto warped = gaussian_blur(rotate_bilinear(down, h, w, rotation_deg), h, w,
                                          blur_sigma);
        std::copy(warped.begin(), warped.end(), pair.d2.x.row(i));
        pair.d1.labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)];
        pair.d2.labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)];
    }
    pair.ground_truth = identity_truth(images.count);
    pair.sidecar_json = json{{"generator", "mnist_double"},
                             {"count", images.count},
                             {"source_size", {images.rows, images.cols}},
                             {"rotation_deg", rotation_deg},
                             {"blur_sigma", blur_sigma},
                             {"seed", seed}}
                            .dump();
    return pair;
}

DatasetPair gen_partial_overlap(const DatasetPair& base, const std::vector<int>& keep1,
                                const std::vector<int>& keep2, std::uint64_t seed) {
    if (!base.d1.has_labels() || !base.d2.has_labels())
        throw BadLabelsError("gen_partial_overlap: base domains must be labeled");
    const std::set<int> k1(keep1.begin(), keep1.end());
    const std::set<int> k2(keep2.begin(), keep2.end());
    if (k1.empty() || k2.empty())
        throw BadShapesError("gen_partial_overlap: keep sets must be non-empty");
    std::vector<int> shared;
    std::set_intersection(k1.begin(), k1.end(), k2.begin(), k2.end(), std::back_inserter(shared));
    if (shared.empty())
        throw NoSharedMassError("gen_partial_overlap: keep sets share no class");

    const auto filter = [](const DomainData& d, const std::set<int>& keep,
                           std::vector<Index>& old_to_new) {
        old_to_new.assign(static_cast<std::size_t>(d.x.rows()), -1);
        std::vector<Index> rows;
        for (Index i = 0; i < d.x.rows(); ++i)
            if (keep.count(d.labels[static_cast<std::size_t>(i)])) {
                old_to_new[static_cast<std::size_t>(i)] = static_cast<Index>(rows.size());
                rows.push_back(i);
            }
        DomainData out;
        out.x = Matrix(static_cast<Index>(rows.size()), d.x.cols());
        out.labels.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::copy(d.x.row(rows[r]), d.x.row(rows[r]) + d.x.cols(),
                      out.x.row(static_cast<Index>(r)));
            out.labels[r] = d.labels[static_cast<std::size_t>(rows[r])];
        }
        return out;
    };

    DatasetPair out;
    std::vector<Index> map1, map2;
    out.d1 = filter(base.d1, k1, map1);
    out.d2 = filter(base.d2, k2, map2);
    for (const auto& [i, j] : base.ground_truth) {
        const Index ni = map1[static_cast<std::size_t>(i)];
        const Index nj = map2[static_cast<std::size_t>(j)];
        if (ni >= 0 && nj >= 0) out.ground_truth.emplace_back(ni, nj);
    }
    if (out.ground_truth.empty())
        throw NoSharedMassError("gen_partial_overlap: no ground-truth pair survives");
    if (!base.latent.empty()) {
        out.latent = Matrix(out.d1.x.rows(), base.latent.cols());
        for (Index i = 0; i < base.d1.x.rows(); ++i)
            if (map1[static_cast<std::size_t>(i)] >= 0)
                std::copy(base.latent.row(i), base.latent.row(i) + base.latent.cols(),
                          out.latent.row(map1[static_cast<std::size_t>(i)]));
    }
    out.shared_fraction =
        static_cast<double>(out.ground_truth.size()) / static_cast<double>(out.d1.x.rows());

    json base_meta = json::parse(base.sidecar_json.empty() ? "{}" : base.sidecar_json,
                                 nullptr, false);
    out.sidecar_json = json{{"generator", "partial_overlap"},
                            {"base", base_meta.is_discarded() ? json{} : base_meta},
                            {"keep1", keep1},
                            {"keep2", keep2},
                            {"shared_fraction", out.shared_fraction},
                            {"seed", seed}}
                           .dump();
    return out;
}

CorrespondenceSet sample_correspondences(const std::vector<std::pair<Index, Index>>& truth,
                                         double fraction, std::uint64_t seed) {
    if (truth.empty())
        throw BadCorrespondenceError("sample_correspondences: ground truth is empty");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw BadShapesError("sample_correspondences: fraction must lie in (0, 1]");
    const auto total = truth.size();
    const auto want = std::min(total, static_cast<std::size_t>(std::max<long long>(
                                          1, std::llround(fraction * static_cast<double>(total)))));
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    CorrespondenceSet corr;
    corr.reserve(want);
    for (std::size_t s = 0; s < want; ++s)
        corr.push_back({truth[order[s]].first, truth[order[s]].second});
    std::sort(corr.begin(), corr.end(),
              [](const CorrespondencePair& a, const CorrespondencePair& b) {
                  return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    return corr;
}

DatasetPair load_csv_pair(const std::string& path1, const std::string& path2,
                          const std::string& truth_path, const std::string& label_col) {
    DatasetPair pair;
    pair.d1 = read_domain_csv(path1, label_col);
    pair.d2 = read_domain_csv(path2, label_col);
    pair.ground_truth = read_pairs_csv(truth_path);
    for (const auto& [i, j] : pair.ground_truth)
        if (i < 0 || i >= pair.d1.x.rows() || j < 0 || j >= pair.d2.x.rows())
            throw BadCorrespondenceError("load_csv_pair: ground-truth pair (" + std::to_string(i) +
                                         ", " + std::to_string(j) + ") out of range");
    pair.shared_fraction = pair.d1.x.rows() > 0
                               ? static_cast<double>(pair.ground_truth.size()) /
                                     static_cast<double>(pair.d1.x.rows())
                               : 0.0;
    pair.sidecar_json = json{{"generator", "csv"},
                             {"path1", path1},
                             {"path2", path2},
                             {"truth", truth_path}}
                            .dump();
    return pair;
}

}  // namespace dta
