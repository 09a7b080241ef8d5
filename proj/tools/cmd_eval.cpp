#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "common.hpp"
#include "dta/evaluation.hpp"

namespace dtacli {

namespace {

struct EvalOpts {
    std::string task;
    std::string data_dir;
    std::string align_dir;
    std::string pairs_path;
    std::string plan_path;
    std::vector<dta::Index> ks = {10};
    double lambda = 1e-2;
    double bandwidth = 0.0;
    std::string target = "domain2";
    dta::Index top_k = 25;
    int bins = 16;
    int repeats = 1;
    std::uint64_t seed = 0;
    std::string out = "eval_out";
    std::string config_path;
};

std::string params_json(const EvalOpts& o) {
    return json{{"task", o.task},       {"k", o.ks},     {"lambda", o.lambda},
                {"bandwidth", o.bandwidth}, {"target", o.target}, {"top_k", o.top_k},
                {"bins", o.bins},       {"repeats", o.repeats}}
        .dump();
}

// mean and standard deviation rows per metric, appended after the per-seed rows
void append_aggregates(std::vector<dta::ReportRow>* rows, std::size_t first) {
    std::map<std::string, std::vector<double>> by_metric;
    for (std::size_t r = first; r < rows->size(); ++r)
        by_metric[(*rows)[r].metric].push_back((*rows)[r].value);
    std::vector<dta::ReportRow> extra;
    for (const auto& [metric, values] : by_metric) {
        if (values.size() < 2) continue;
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(values.size() - 1);
        extra.push_back({metric + "_mean", mean, 0, "{}"});
        extra.push_back({metric + "_std", std::sqrt(var), 0, "{}"});
    }
    rows->insert(rows->end(), extra.begin(), extra.end());
}

void print_table(const std::vector<dta::ReportRow>& rows) {
    std::size_t width = 6;
    for (const auto& r : rows) width = std::max(width, r.metric.size());
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "metric"
              << std::setw(24) << "value" << "seed\n";
    for (const auto& r : rows)
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << r.metric
                  << std::setw(24) << dta::format_double(r.value) << r.seed << "\n";
}

void run_eval(const CLI::App& cmd, EvalOpts o) {
    if (!o.config_path.empty()) {
        const json j = load_config_file(o.config_path);
        override_from_config(cmd, j, "data", &o.data_dir);
        override_from_config(cmd, j, "align", &o.align_dir);
        override_from_config(cmd, j, "lambda", &o.lambda);
        override_from_config(cmd, j, "bandwidth", &o.bandwidth);
        override_from_config(cmd, j, "target", &o.target);
        override_from_config(cmd, j, "top-k", &o.top_k);
        override_from_config(cmd, j, "bins", &o.bins);
        override_from_config(cmd, j, "repeats", &o.repeats);
        override_from_config(cmd, j, "seed", &o.seed);
        override_from_config(cmd, j, "out", &o.out);
    }
    if (o.data_dir.empty()) throw CLI::ValidationError("eval", "--data is required");
    if (o.pairs_path.empty() && !o.align_dir.empty())
        o.pairs_path = join_path(o.align_dir, "pairs.csv");
    if (o.plan_path.empty() && !o.align_dir.empty())
        o.plan_path = join_path(o.align_dir, "plan.csv");

    LoadedData data = load_data_dir(o.data_dir);
    const dta::DatasetPair& pair = data.pair;
    const auto known = to_pairs(data.corr);

    const auto need_pairs = [&]() {
        if (o.pairs_path.empty())
            throw CLI::ValidationError("eval", "task needs --pairs or --align");
        return dta::read_pairs_csv(o.pairs_path);
    };

    std::vector<dta::ReportRow> rows;
    if (o.task == "da") {
        if (o.plan_path.empty())
            throw CLI::ValidationError("eval", "task da needs --plan or --align");
        const dta::Matrix plan =
            dta::read_plan_csv(o.plan_path, pair.d1.x.rows(), pair.d2.x.rows());
        for (dta::Index k : o.ks) {
            const auto rep = dta::eval_domain_adaptation(plan, pair, k);
            rows.push_back({"da_accuracy_k" + std::to_string(k), rep.accuracy, o.seed,
                            params_json(o)});
        }
    } else if (o.task == "reg") {
        const auto recovered = need_pairs();
        const dta::RegressionTarget target = o.target == "latent"
                                                 ? dta::RegressionTarget::latent
                                                 : dta::RegressionTarget::domain2;
        for (int r = 0; r < o.repeats; ++r) {
            const std::uint64_t s = o.seed + static_cast<std::uint64_t>(r);
            const auto rep = dta::eval_regression(recovered, known, pair, target, o.lambda,
                                                  o.bandwidth, s);
            rows.push_back({"reg_mse_recovered", rep.mse_recovered, s, params_json(o)});
            if (!known.empty()) rows.push_back({"reg_mse_prior", rep.mse_prior, s, params_json(o)});
            rows.push_back({"reg_mse_alldata", rep.mse_alldata, s, params_json(o)});
        }
        append_aggregates(&rows, 0);
    } else if (o.task == "concat") {
        const auto recovered = need_pairs();
        for (int r = 0; r < o.repeats; ++r) {
            const std::uint64_t s = o.seed + static_cast<std::uint64_t>(r);
            const auto rep = dta::eval_concat(recovered, pair, o.ks.front(), s);
            rows.push_back({"concat_accuracy", rep.concat_accuracy, s, params_json(o)});
            rows.push_back({"concat_d1_accuracy", rep.d1_accuracy, s, params_json(o)});
            rows.push_back({"concat_d2_accuracy", rep.d2_accuracy, s, params_json(o)});
        }
        append_aggregates(&rows, 0);
    } else if (o.task == "match") {
        const auto rep = dta::match_accuracy(need_pairs(), pair);
        rows.push_back({"match_exact", rep.exact, o.seed, params_json(o)});
        if (rep.has_label) rows.push_back({"match_label", rep.label, o.seed, params_json(o)});
    } else if (o.task == "mi") {
        const auto reports = dta::eval_mi_recovery(need_pairs(), known, pair, o.top_k, o.bins);
        ensure_dir(o.out);
        std::ostringstream mi_csv;
        mi_csv << "f1,f2,reference,known_only,recovered\n";
        double rel_rec = 0.0, rel_known = 0.0;
        std::size_t counted = 0;
        for (const auto& rep : reports) {
            mi_csv << rep.f1 << "," << rep.f2 << "," << dta::format_double(rep.reference) << ","
                   << dta::format_double(rep.known_only) << ","
                   << dta::format_double(rep.recovered) << "\n";
            if (rep.reference > 0.0) {
                rel_rec += std::abs(rep.recovered - rep.reference) / rep.reference;
                rel_known += std::abs(rep.known_only - rep.reference) / rep.reference;
                ++counted;
            }
        }
        dta::write_text_file(join_path(o.out, "mi.csv"), mi_csv.str());
        if (counted > 0) {
            rows.push_back({"mi_rel_err_recovered", rel_rec / static_cast<double>(counted), o.seed,
                            params_json(o)});
            rows.push_back({"mi_rel_err_known", rel_known / static_cast<double>(counted), o.seed,
                            params_json(o)});
        }
        rows.push_back({"mi_pairs_scored", static_cast<double>(reports.size()), o.seed,
                        params_json(o)});
    }

    ensure_dir(o.out);
    dta::write_report_csv(join_path(o.out, "report.csv"), rows);
    json resolved = json::parse(params_json(o));
    resolved["command"] = "eval";
    resolved["data"] = o.data_dir;
    resolved["align"] = o.align_dir;
    resolved["seed"] = o.seed;
    resolved["out"] = o.out;
    write_resolved_config(o.out, resolved);
    print_table(rows);
}

}  // namespace

void setup_eval(CLI::App& app) {
    auto* cmd = app.add_subcommand("eval", "score an alignment on downstream tasks");
    auto opts = std::make_shared<EvalOpts>();
    cmd->add_option("task", opts->task, "da | reg | concat | match | mi")
        ->required()
        ->check(CLI::IsMember({"da", "reg", "concat", "match", "mi"}));
    cmd->add_option("--data", opts->data_dir, "dataset directory from `generate`");
    cmd->add_option("--align", opts->align_dir, "alignment directory from `align`");
    cmd->add_option("--pairs", opts->pairs_path, "recovered pairs CSV (overrides --align)");
    cmd->add_option("--plan", opts->plan_path, "plan CSV (overrides --align)");
    cmd->add_option("--k", opts->ks, "kNN sizes; repeatable for task da");
    cmd->add_option("--lambda", opts->lambda, "ridge strength (task reg)");
    cmd->add_option("--bandwidth", opts->bandwidth, "kernel bandwidth (<=0: median heuristic)");
    cmd->add_option("--target", opts->target, "regression target")
        ->check(CLI::IsMember({"latent", "domain2"}));
    cmd->add_option("--top-k", opts->top_k, "feature pairs kept by reference MI (task mi)");
    cmd->add_option("--bins", opts->bins, "histogram bins per axis (task mi)");
    cmd->add_option("--repeats", opts->repeats, "number of split seeds");
    cmd->add_option("--seed", opts->seed, "first split seed");
    cmd->add_option("--out", opts->out, "output directory");
    cmd->add_option("--config", opts->config_path, "JSON config file (flags take precedence)");
    cmd->callback([opts, cmd]() { run_eval(*cmd, *opts); });
}

}  // namespace dtacli
