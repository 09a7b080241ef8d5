#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dta/datasets.hpp"
#include "dta/error.hpp"
#include "dta/io.hpp"
#include "dta/pipeline.hpp"

namespace dtacli {

using nlohmann::json;

void setup_generate(CLI::App& app);
void setup_align(CLI::App& app);
void setup_eval(CLI::App& app);
void setup_sweep(CLI::App& app);

// Pipeline parameters shared by `align` and `sweep`.
struct PipelineFlags {
    int k = 10;
    double alpha = 10.0;
    int t = 10;
    double mu = 0.5;
    std::string mass = "auto";  // fraction in (0,1] or "auto"
    bool entropic = false;
    double epsilon = 0.0;
    int grid_points = 20;
    bool labels = false;
    int embed = 0;
    std::string laplacian = "rw";
};

inline void add_pipeline_flags(CLI::App* cmd, PipelineFlags* f) {
    cmd->add_option("--k", f->k, "neighbour rank for the adaptive kernel bandwidth");
    cmd->add_option("--alpha", f->alpha, "kernel decay exponent");
    cmd->add_option("--t", f->t, "diffusion steps");
    cmd->add_option("--mu", f->mu, "intra-domain weight of the joint affinity");
    cmd->add_option("--mass", f->mass,
                    "transported fraction of the smaller marginal, or 'auto' for knee selection");
    cmd->add_flag("--entropic", f->entropic, "entropy-regularised solver instead of the exact one");
    cmd->add_option("--epsilon", f->epsilon,
                    "entropic regularisation strength (<=0: 1e-2 * mean cost)");
    cmd->add_option("--grid-points", f->grid_points, "mass grid size for 'auto'");
    cmd->add_flag("--labels", f->labels, "add +1 cost to cross-class pairs");
    cmd->add_option("--embed", f->embed, "joint embedding dimensions (0: skip)");
    cmd->add_option("--laplacian", f->laplacian, "embedding Laplacian")
        ->check(CLI::IsMember({"rw", "unnormalized"}));
}

inline dta::AlignConfig make_align_config(const PipelineFlags& f) {
    dta::AlignConfig cfg;
    cfg.kernel.k = f.k;
    cfg.kernel.alpha = f.alpha;
    cfg.kernel.t = f.t;
    cfg.kernel.mu = f.mu;
    cfg.entropic = f.entropic;
    cfg.epsilon = f.epsilon;
    cfg.mass_grid_points = f.grid_points;
    cfg.use_labels = f.labels;
    cfg.embed_dims = f.embed;
    cfg.laplacian = f.laplacian == "unnormalized" ? dta::LaplacianVariant::unnormalized
                                                  : dta::LaplacianVariant::random_walk;
    if (f.mass != "auto") {
        try {
            std::size_t used = 0;
            cfg.mass = std::stod(f.mass, &used);
            if (used != f.mass.size()) throw std::invalid_argument(f.mass);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--mass", "expected a number or 'auto'");
        }
    }
    return cfg;
}

inline json pipeline_flags_json(const PipelineFlags& f) {
    return json{{"k", f.k},
                {"alpha", f.alpha},
                {"t", f.t},
                {"mu", f.mu},
                {"mass", f.mass},
                {"entropic", f.entropic},
                {"epsilon", f.epsilon},
                {"grid_points", f.grid_points},
                {"labels", f.labels},
                {"embed", f.embed},
                {"laplacian", f.laplacian}};
}

inline json load_config_file(const std::string& path) {
    json j = json::parse(dta::read_text_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw dta::BadFileError(path + ": config must be a JSON object");
    return j;
}

// File values fill in only where the flag was not given on the command line.
template <typename T>
void override_from_config(const CLI::App& cmd, const json& j, const std::string& key, T* dst) {
    if (!j.contains(key)) return;
    const CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    if (opt != nullptr && opt->count() > 0) return;
    if constexpr (std::is_same_v<T, std::string>) {
        if (j.at(key).is_number()) {
            *dst = dta::format_double(j.at(key).get<double>());
            return;
        }
    }
    *dst = j.at(key).get<T>();
}

inline void override_pipeline_flags(const CLI::App& cmd, const json& j, PipelineFlags* f) {
    override_from_config(cmd, j, "k", &f->k);
    override_from_config(cmd, j, "alpha", &f->alpha);
    override_from_config(cmd, j, "t", &f->t);
    override_from_config(cmd, j, "mu", &f->mu);
    override_from_config(cmd, j, "mass", &f->mass);
    override_from_config(cmd, j, "entropic", &f->entropic);
    override_from_config(cmd, j, "epsilon", &f->epsilon);
    override_from_config(cmd, j, "grid_points", &f->grid_points);
    override_from_config(cmd, j, "labels", &f->labels);
    override_from_config(cmd, j, "embed", &f->embed);
    override_from_config(cmd, j, "laplacian", &f->laplacian);
}

inline std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw dta::BadFileError("cannot create directory: " + dir + " (" + ec.message() + ")");
}

inline void write_resolved_config(const std::string& out_dir, const json& resolved) {
    dta::write_text_file(join_path(out_dir, "config.json"), resolved.dump(2) + "\n");
}

// Dataset directory layout produced by `generate`: domain1.csv, domain2.csv,
// corr.csv, and optionally truth.csv and latent.csv.
struct LoadedData {
    dta::DatasetPair pair;
    dta::CorrespondenceSet corr;
};

inline dta::CorrespondenceSet to_corr(const std::vector<std::pair<dta::Index, dta::Index>>& v) {
    dta::CorrespondenceSet c;
    c.reserve(v.size());
    for (const auto& [i, j] : v) c.push_back({i, j});
    return c;
}

inline std::vector<std::pair<dta::Index, dta::Index>> to_pairs(const dta::CorrespondenceSet& c) {
    std::vector<std::pair<dta::Index, dta::Index>> v;
    v.reserve(c.size());
    for (const auto& p : c) v.emplace_back(p.i, p.j);
    return v;
}

inline LoadedData load_data_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    LoadedData data;
    data.pair.d1 = dta::read_domain_csv(join_path(dir, "domain1.csv"));
    data.pair.d2 = dta::read_domain_csv(join_path(dir, "domain2.csv"));
    if (fs::exists(join_path(dir, "truth.csv")))
        data.pair.ground_truth = dta::read_pairs_csv(join_path(dir, "truth.csv"));
    if (fs::exists(join_path(dir, "latent.csv")))
        data.pair.latent = dta::read_domain_csv(join_path(dir, "latent.csv")).x;
    if (fs::exists(join_path(dir, "corr.csv")))
        data.corr = to_corr(dta::read_pairs_csv(join_path(dir, "corr.csv")));
    if (!data.pair.ground_truth.empty() && data.pair.d1.x.rows() > 0)
        data.pair.shared_fraction = static_cast<double>(data.pair.ground_truth.size()) /
                                    static_cast<double>(data.pair.d1.x.rows());
    return data;
}

}  // namespace dtacli
