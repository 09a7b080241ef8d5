#include <iostream>
#include <memory>

#include "common.hpp"
#include "dta/matrix.hpp"

namespace dtacli {

namespace {

struct GenerateOpts {
    std::string dataset;
    dta::Index n = 1000;
    dta::Index n_per_class = 200;
    double noise = 0.05;
    double rotation = 45.0;
    double blur = 1.0;
    std::string images_path;
    std::string image_labels_path;
    dta::Index limit = 0;
    std::vector<int> keep1 = {0, 1};
    std::vector<int> keep2 = {1, 2};
    double fraction = 0.05;
    std::uint64_t seed = 0;
    std::string out = ".";
    std::string config_path;
};

dta::DatasetPair build_dataset(const GenerateOpts& o) {
    if (o.dataset == "swiss-scurve") return dta::gen_swiss_scurve(o.n, o.noise, o.seed);
    if (o.dataset == "helix") return dta::gen_double_helix(o.n, o.noise, o.seed);
    if (o.dataset == "blobs") return dta::gen_gaussian_blobs(o.n_per_class, o.seed);
    if (o.dataset == "partial-blobs")
        return dta::gen_partial_overlap(dta::gen_gaussian_blobs(o.n_per_class, o.seed), o.keep1,
                                        o.keep2, o.seed);
    if (o.dataset == "mnist-double") {
        if (o.images_path.empty() || o.image_labels_path.empty())
            throw CLI::ValidationError("generate",
                                       "mnist-double needs --images and --image-labels");
        dta::IdxImages images = dta::read_idx_images(o.images_path);
        std::vector<std::uint8_t> labels = dta::read_idx_labels(o.image_labels_path);
        if (o.limit > 0 && o.limit < images.count) {
            images.count = o.limit;
            images.pixels.resize(static_cast<std::size_t>(o.limit * images.rows * images.cols));
            labels.resize(static_cast<std::size_t>(o.limit));
        }
        return dta::gen_mnist_double(images, labels, o.rotation, o.blur, o.seed);
    }
    throw CLI::ValidationError("generate", "unknown dataset: " + o.dataset);
}

void run_generate(const CLI::App& cmd, GenerateOpts o) {
    if (!o.config_path.empty()) {
        const json j = load_config_file(o.config_path);
        override_from_config(cmd, j, "n", &o.n);
        override_from_config(cmd, j, "n-per-class", &o.n_per_class);
        override_from_config(cmd, j, "noise", &o.noise);
        override_from_config(cmd, j, "rotation", &o.rotation);
        override_from_config(cmd, j, "blur", &o.blur);
        override_from_config(cmd, j, "fraction", &o.fraction);
        override_from_config(cmd, j, "seed", &o.seed);
        override_from_config(cmd, j, "out", &o.out);
    }

    const dta::DatasetPair pair = build_dataset(o);
    const dta::CorrespondenceSet corr =
        dta::sample_correspondences(pair.ground_truth, o.fraction, o.seed);

    ensure_dir(o.out);
    dta::write_domain_csv(join_path(o.out, "domain1.csv"), pair.d1);
    dta::write_domain_csv(join_path(o.out, "domain2.csv"), pair.d2);
    dta::write_pairs_csv(join_path(o.out, "truth.csv"), pair.ground_truth);
    dta::write_pairs_csv(join_path(o.out, "corr.csv"), to_pairs(corr));
    if (!pair.latent.empty())
        dta::write_matrix_csv(join_path(o.out, "latent.csv"), pair.latent, "latent_");

    json meta{{"command", "generate"},
              {"dataset", o.dataset},
              {"fraction", o.fraction},
              {"seed", o.seed},
              {"n1", pair.d1.x.rows()},
              {"n2", pair.d2.x.rows()},
              {"shared_fraction", pair.shared_fraction},
              {"correspondences", corr.size()},
              {"sidecar", json::parse(pair.sidecar_json)}};
    dta::write_text_file(join_path(o.out, "meta.json"), meta.dump(2) + "\n");

    std::cout << "generate " << o.dataset << ": " << pair.d1.x.rows() << "x" << pair.d1.x.cols()
              << " and " << pair.d2.x.rows() << "x" << pair.d2.x.cols() << " -> " << o.out << " ("
              << corr.size() << " correspondences)\n";
}

}  // namespace

void setup_generate(CLI::App& app) {
    auto* cmd = app.add_subcommand("generate", "write a synthetic dataset directory");
    auto opts = std::make_shared<GenerateOpts>();
    cmd->add_option("dataset", opts->dataset, "swiss-scurve | helix | blobs | partial-blobs | mnist-double")
        ->required()
        ->check(CLI::IsMember({"swiss-scurve", "helix", "blobs", "partial-blobs", "mnist-double"}));
    cmd->add_option("--n", opts->n, "points per domain (curve datasets)");
    cmd->add_option("--n-per-class", opts->n_per_class, "points per class (blob datasets)");
    cmd->add_option("--noise", opts->noise, "iid Gaussian coordinate noise");
    cmd->add_option("--rotation", opts->rotation, "second-view rotation in degrees (mnist-double)");
    cmd->add_option("--blur", opts->blur, "second-view Gaussian blur sigma (mnist-double)");
    cmd->add_option("--images", opts->images_path, "IDX image file (mnist-double)");
    cmd->add_option("--image-labels", opts->image_labels_path, "IDX label file (mnist-double)");
    cmd->add_option("--limit", opts->limit, "use only the first N images (0: all)");
    cmd->add_option("--keep1", opts->keep1, "classes kept in domain 1 (partial-blobs)");
    cmd->add_option("--keep2", opts->keep2, "classes kept in domain 2 (partial-blobs)");
    cmd->add_option("--fraction", opts->fraction, "fraction of true pairs revealed as correspondences");
    cmd->add_option("--seed", opts->seed, "generator seed");
    cmd->add_option("--out", opts->out, "output directory");
    cmd->add_option("--config", opts->config_path, "JSON config file (flags take precedence)");
    cmd->callback([opts, cmd]() { run_generate(*cmd, *opts); });
}

}  // namespace dtacli
