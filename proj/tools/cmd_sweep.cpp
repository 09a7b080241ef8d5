#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>

#include "common.hpp"
#include "dta/evaluation.hpp"

namespace dtacli {

namespace {

struct SweepOpts {
    std::string param;
    std::vector<double> grid;
    std::string data_dir;
    std::string metric = "match";
    PipelineFlags flags;
    dta::Index eval_k = 10;
    std::uint64_t seed = 0;
    std::string out = "sweep_out";
    std::string config_path;
};

std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') q += '"';
    }
    q += '"';
    return q;
}

int int_param(double v, const std::string& param) {
    if (v != std::floor(v))
        throw dta::BadShapesError("sweep: parameter '" + param + "' needs integer grid values");
    return static_cast<int>(v);
}

void run_sweep(const CLI::App& cmd, SweepOpts o) {
    if (!o.config_path.empty()) {
        const json j = load_config_file(o.config_path);
        override_pipeline_flags(cmd, j, &o.flags);
        override_from_config(cmd, j, "data", &o.data_dir);
        override_from_config(cmd, j, "metric", &o.metric);
        override_from_config(cmd, j, "seed", &o.seed);
        override_from_config(cmd, j, "out", &o.out);
    }
    if (o.data_dir.empty()) throw CLI::ValidationError("sweep", "--data is required");
    if (o.grid.empty()) throw CLI::ValidationError("sweep", "--grid is required");

    const LoadedData data = load_data_dir(o.data_dir);
    const dta::DatasetPair& pair = data.pair;
    if (o.param == "fraction" && pair.ground_truth.empty())
        throw CLI::ValidationError("sweep", "fraction sweep needs truth.csv in --data");

    ensure_dir(o.out);
    std::ostringstream table;
    table << "param,value,metric,result,failed,error\n";
    for (double value : o.grid) {
        PipelineFlags flags = o.flags;
        dta::CorrespondenceSet corr = data.corr;
        std::string error;
        double result = 0.0;
        try {
            if (o.param == "t") flags.t = int_param(value, o.param);
            else if (o.param == "k") flags.k = int_param(value, o.param);
            else if (o.param == "alpha") flags.alpha = value;
            else if (o.param == "mu") flags.mu = value;
            else corr = dta::sample_correspondences(pair.ground_truth, value, o.seed);

            const std::string point_dir =
                join_path(o.out, o.param + "_" + dta::format_double(value));
            ensure_dir(point_dir);
            const dta::AlignConfig config = make_align_config(flags);
            const dta::AlignResult res =
                dta::align(pair.d1.x, pair.d2.x, corr, config,
                           pair.d1.has_labels() ? &pair.d1.labels : nullptr,
                           pair.d2.has_labels() ? &pair.d2.labels : nullptr);

            if (o.metric == "match") {
                result = dta::match_accuracy(res.pairs, pair).exact;
            } else if (o.metric == "da") {
                result = dta::eval_domain_adaptation(res.plan.t, pair, o.eval_k).accuracy;
            } else {
                result = dta::ntc(res.plan);
            }

            dta::write_plan_csv(join_path(point_dir, "plan.csv"), res.plan.t);
            dta::write_pairs_csv(join_path(point_dir, "pairs.csv"), res.pairs);
            json resolved = pipeline_flags_json(flags);
            resolved["command"] = "sweep";
            resolved["param"] = o.param;
            resolved["value"] = value;
            resolved["metric"] = o.metric;
            resolved["seed"] = o.seed;
            resolved["correspondences"] = corr.size();
            write_resolved_config(point_dir, resolved);
        } catch (const std::exception& e) {
            error = e.what();
        }
        table << o.param << "," << dta::format_double(value) << "," << o.metric << ","
              << (error.empty() ? dta::format_double(result) : "") << ","
              << (error.empty() ? 0 : 1) << "," << csv_quote(error) << "\n";
        std::cout << o.param << "=" << dta::format_double(value) << ": "
                  << (error.empty() ? o.metric + " " + dta::format_double(result)
                                    : "failed (" + error + ")")
                  << "\n";
    }
    dta::write_text_file(join_path(o.out, "sweep.csv"), table.str());

    json resolved = pipeline_flags_json(o.flags);
    resolved["command"] = "sweep";
    resolved["param"] = o.param;
    resolved["grid"] = o.grid;
    resolved["metric"] = o.metric;
    resolved["data"] = o.data_dir;
    resolved["seed"] = o.seed;
    resolved["out"] = o.out;
    write_resolved_config(o.out, resolved);
}

}  // namespace

void setup_sweep(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "rerun the alignment over a parameter grid");
    auto opts = std::make_shared<SweepOpts>();
    cmd->add_option("--param", opts->param, "t | k | alpha | mu | fraction")
        ->required()
        ->check(CLI::IsMember({"t", "k", "alpha", "mu", "fraction"}));
    cmd->add_option("--grid", opts->grid, "comma-separated grid values")
        ->required()
        ->delimiter(',');
    cmd->add_option("--data", opts->data_dir, "dataset directory from `generate`");
    cmd->add_option("--metric", opts->metric, "score per grid point")
        ->check(CLI::IsMember({"match", "da", "ntc"}));
    cmd->add_option("--eval-k", opts->eval_k, "kNN size for the da metric");
    add_pipeline_flags(cmd, &opts->flags);
    cmd->add_option("--seed", opts->seed, "correspondence-sampling seed for fraction sweeps");
    cmd->add_option("--out", opts->out, "output directory");
    cmd->add_option("--config", opts->config_path, "JSON config file (flags take precedence)");
    cmd->callback([opts, cmd]() { run_sweep(*cmd, *opts); });
}

}  // namespace dtacli
