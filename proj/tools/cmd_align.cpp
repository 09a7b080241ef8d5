#include <iostream>
#include <memory>

#include "common.hpp"
#include "dta/simd/simd.hpp"

namespace dtacli {

namespace {

struct AlignOpts {
    std::string data_dir;
    std::string d1_path, d2_path, corr_path;
    PipelineFlags flags;
    std::uint64_t seed = 0;
    std::string out = "align_out";
    std::string config_path;
};

void run_align(const CLI::App& cmd, AlignOpts o) {
    if (!o.config_path.empty()) {
        const json j = load_config_file(o.config_path);
        override_pipeline_flags(cmd, j, &o.flags);
        override_from_config(cmd, j, "data", &o.data_dir);
        override_from_config(cmd, j, "seed", &o.seed);
        override_from_config(cmd, j, "out", &o.out);
    }

    dta::DatasetPair pair;
    dta::CorrespondenceSet corr;
    if (!o.data_dir.empty()) {
        LoadedData data = load_data_dir(o.data_dir);
        pair = std::move(data.pair);
        corr = std::move(data.corr);
    } else if (!o.d1_path.empty() && !o.d2_path.empty() && !o.corr_path.empty()) {
        pair.d1 = dta::read_domain_csv(o.d1_path);
        pair.d2 = dta::read_domain_csv(o.d2_path);
        corr = to_corr(dta::read_pairs_csv(o.corr_path));
    } else {
        throw CLI::ValidationError("align", "provide --data, or all of --d1/--d2/--corr");
    }

    const dta::AlignConfig config = make_align_config(o.flags);
    const dta::AlignResult result =
        dta::align(pair.d1.x, pair.d2.x, corr, config,
                   pair.d1.has_labels() ? &pair.d1.labels : nullptr,
                   pair.d2.has_labels() ? &pair.d2.labels : nullptr);

    ensure_dir(o.out);
    dta::write_plan_csv(join_path(o.out, "plan.csv"), result.plan.t);
    dta::write_pairs_csv(join_path(o.out, "pairs.csv"), result.pairs);
    dta::write_matrix_csv(join_path(o.out, "projection.csv"), result.projection, "feat_");
    if (result.mass_auto) dta::write_curve_csv(join_path(o.out, "ntc_curve.csv"), result.curve);
    if (config.embed_dims > 0)
        dta::write_embedding_csv(join_path(o.out, "embedding.csv"), result.embedding);

    json resolved = pipeline_flags_json(o.flags);
    resolved["command"] = "align";
    resolved["data"] = o.data_dir;
    resolved["seed"] = o.seed;
    resolved["out"] = o.out;
    resolved["label_augmented"] = config.use_labels;
    write_resolved_config(o.out, resolved);

    dta::Index skipped = 0;
    for (bool m : result.projection_mask) skipped += m ? 0 : 1;
    json summary{{"objective", result.plan.objective},
                 {"mass", result.plan.mass},
                 {"mass_fraction", result.mass_fraction},
                 {"mass_auto", result.mass_auto},
                 {"flat_curve", result.flat_curve},
                 {"ntc", dta::ntc(result.plan)},
                 {"pairs", result.pairs.size()},
                 {"rows_without_mass", skipped},
                 {"iterations", result.plan.iterations},
                 {"entropic", result.plan.entropic},
                 {"label_augmented", config.use_labels},
                 {"n1", pair.d1.x.rows()},
                 {"n2", pair.d2.x.rows()},
                 {"correspondences", corr.size()},
                 {"simd_backend", dta::simd::backend_name()}};
    dta::write_text_file(join_path(o.out, "summary.json"), summary.dump(2) + "\n");

    if (result.mass_auto)
        std::cout << "selected mass fraction " << dta::format_double(result.mass_fraction)
                  << " from a " << result.curve.size() << "-point curve"
                  << (result.flat_curve ? " (flat curve, kept the maximum)" : "") << "\n";
    std::cout << "align: objective " << dta::format_double(result.plan.objective) << ", ntc "
              << dta::format_double(dta::ntc(result.plan)) << ", " << result.pairs.size()
              << " pairs -> " << o.out << "\n";
}

}  // namespace

void setup_align(CLI::App& app) {
    auto* cmd = app.add_subcommand("align", "align two domains through known correspondences");
    auto opts = std::make_shared<AlignOpts>();
    cmd->add_option("--data", opts->data_dir, "dataset directory from `generate`");
    cmd->add_option("--d1", opts->d1_path, "domain-1 feature CSV");
    cmd->add_option("--d2", opts->d2_path, "domain-2 feature CSV");
    cmd->add_option("--corr", opts->corr_path, "correspondence CSV (header i,j)");
    add_pipeline_flags(cmd, &opts->flags);
    cmd->add_option("--seed", opts->seed, "recorded in the resolved config");
    cmd->add_option("--out", opts->out, "output directory");
    cmd->add_option("--config", opts->config_path, "JSON config file (flags take precedence)");
    cmd->callback([opts, cmd]() { run_align(*cmd, *opts); });
}

}  // namespace dtacli
