// fairsketch command-line front end.
//
//   fairsketch lra        --input data.csv --group-col SEX --k 2 [--method bicriteria|svd|search]
//   fairsketch css        --input data.csv --group-col SEX --k 2
//   fairsketch regress    --input data.csv --group-col SEX --label-col y [--norm l1|l2]
//   fairsketch experiment synthetic|credit|poc [--out report.csv --format csv|json]
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fairsketch/fairsketch.hpp"

namespace fs = fairsketch;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = fs::detail::trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json matrix_json(const fs::Matrix& m) {
    json rows = json::array();
    for (fs::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (fs::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw fs::DataError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw fs::DataError("write to '" + path + "' failed");
}

struct DataOptions {
    std::string input;
    std::string group_col;
    std::string features;
    std::string label_col;
    fs::Index subsample = 0;
    fs::Seed seed = 0;

    void add(CLI::App* app, bool need_label) {
        app->add_option("--input", input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
        app->add_option("--group-col", group_col, "sensitive-attribute column defining the groups")->required();
        app->add_option("--features", features, "comma-separated feature columns (default: all other columns)");
        auto* label = app->add_option("--label-col", label_col, "regression target column");
        if (need_label) label->required();
        app->add_option("--s", subsample, "uniformly subsample this many rows before grouping");
        app->add_option("--seed", seed, "random seed");
    }

    [[nodiscard]] fs::IngestResult load() const {
        fs::IngestSpec spec;
        spec.path = input;
        spec.group_column = group_col;
        spec.feature_columns = split_list(features);
        if (!label_col.empty()) spec.label_column = label_col;
        if (subsample > 0) spec.subsample = subsample;
        spec.seed = seed;
        return fs::ingest_csv(spec);
    }
};

struct SketchOptions {
    fs::BicriteriaConfig cfg;
    double p = 0.0;
    fs::Index t_rows = 0;
    std::string column_sampler = "identity";

    void add(CLI::App* app) {
        app->add_option("--k", cfg.k, "target rank")->required()->check(CLI::PositiveNumber);
        app->add_option("--p", p, "Lewis / Dvoretzky exponent (default max(1, round(c ln l)))");
        app->add_option("--c", cfg.c, "trade-off parameter in (0, 1)");
        app->add_option("--g-rows", cfg.g_rows, "rows of the left Gaussian sketch G");
        app->add_option("--h-cols", cfg.h_cols, "columns of the right Gaussian sketch H");
        app->add_option("--lewis-iters", cfg.lewis_iters, "Lewis weight iterations");
        app->add_option("--t-rows", t_rows, "rows sampled into T (default k)");
        app->add_option("--repeats", cfg.repeats, "independent runs; the cheapest is kept");
        app->add_option("--column-sampler", column_sampler, "identity | lewis-columns")
            ->check(CLI::IsMember({"identity", "lewis-columns"}));
        app->add_flag("--squared", cfg.squared_cost, "report squared Frobenius costs");
    }

    [[nodiscard]] fs::BicriteriaConfig resolve(fs::Seed seed) const {
        fs::BicriteriaConfig out = cfg;
        if (p > 0.0) out.p = p;
        if (t_rows > 0) out.lewis_samples = t_rows;
        out.column_sampler =
            column_sampler == "lewis-columns" ? fs::ColumnSampler::LewisColumns : fs::ColumnSampler::Identity;
        out.seed = seed;
        return out;
    }
};

int run_lra(const DataOptions& data_opt, const SketchOptions& sk, const std::string& method, double eps,
            const std::string& out) {
    const auto in = data_opt.load();
    const auto cfg = sk.resolve(data_opt.seed);
    const fs::Matrix baseline = fs::svd_baseline(in.data, cfg.k);
    const double baseline_cost = fs::fair_lra_cost(in.data, baseline, cfg.squared_cost);

    json j{{"method", method},
           {"k", cfg.k},
           {"groups", in.data.labels()},
           {"features", in.feature_names},
           {"squared", cfg.squared_cost},
           {"baseline_cost", baseline_cost}};
    if (method == "svd") {
        j["cost"] = baseline_cost;
        j["factor"] = matrix_json(baseline);
    } else if (method == "search") {
        fs::AlternatingOptions alt;
        alt.seed = cfg.seed;
        alt.squared = cfg.squared_cost;
        const auto res = fs::binary_search_fair_lra(in.data, cfg.k, eps, fs::make_alternating_oracle(in.data, cfg.k, alt),
                                                    {}, cfg.squared_cost);
        j["cost"] = res.cost;
        j["factor"] = matrix_json(res.factor);
        j["iterations"] = res.iterations;
        j["final_alpha"] = res.final_alpha;
        j["fell_back_to_baseline"] = res.fell_back_to_baseline;
    } else {
        const auto sol = fs::bicriteria_fair_lra(in.data, cfg);
        j["cost"] = sol.cost;
        j["rank"] = sol.rank;
        j["p"] = sol.p;
        j["seed"] = sol.seed;
        j["sketch"] = {{"g_rows", sol.g_rows}, {"h_cols", sol.h_cols}, {"t_rows", sol.t_rows}, {"s_cols", sol.s_cols}};
        j["seconds"] = {{"bicrit1", sol.total_seconds}, {"bicrit2", sol.extract_seconds}};
        j["factor"] = matrix_json(sol.factor);
    }
    write_output(out, j.dump(2) + "\n");
    return kOk;
}

int run_css(const DataOptions& data_opt, const SketchOptions& sk, const fs::CssOptions& css, bool brute,
            const std::string& out) {
    const auto in = data_opt.load();
    const auto cfg = sk.resolve(data_opt.seed);
    const fs::CssSolution sol = brute ? fs::brute_force_css(in.data, cfg.k, cfg.squared_cost)
                                      : fs::bicriteria_fair_css(in.data, cfg, css);
    std::vector<std::string> names;
    for (auto idx : sol.indices) names.push_back(in.feature_names[static_cast<std::size_t>(idx)]);
    json factors = json::array();
    for (const auto& m : sol.factors) factors.push_back(matrix_json(m));
    const json j{{"method", brute ? "brute-force" : "bicriteria"},
                 {"k", cfg.k},
                 {"indices", sol.indices},
                 {"columns", names},
                 {"cost", sol.cost},
                 {"squared", sol.squared},
                 {"groups", in.data.labels()},
                 {"factors", factors}};
    write_output(out, j.dump(2) + "\n");
    return kOk;
}

int run_regress(const DataOptions& data_opt, const std::string& norm_name, const std::string& method, double eps,
                int max_iters, double box, const std::string& export_path, double threshold, const std::string& out) {
    const auto in = data_opt.load();
    const auto norm = norm_name == "l1" ? fs::RegressionNorm::L1 : fs::RegressionNorm::L2;
    const fs::GroupedLabels& labels = *in.labels;

    if (!export_path.empty()) {
        const auto model = norm == fs::RegressionNorm::L1 ? fs::export_l1_feasibility(in.data, labels, threshold)
                                                          : fs::export_l2_feasibility(in.data, labels, threshold);
        write_output(export_path, model.text);
    }

    fs::RegressionSolution sol;
    if (method == "stacked") {
        sol = fs::stacked_least_squares(in.data, labels, norm);
    } else if (method == "subgradient") {
        fs::SubgradientOptions opt;
        opt.max_iters = max_iters;
        if (box > 0.0) opt.box = box;
        sol = fs::minmax_subgradient(in.data, labels, norm, opt);
    } else {
        sol = fs::binary_search_fair_regression(in.data, labels, norm, eps);
    }
    const json j{{"method", fs::to_string(sol.method)},
                 {"norm", norm_name},
                 {"x", std::vector<double>(sol.x.data(), sol.x.data() + sol.x.size())},
                 {"features", in.feature_names},
                 {"groups", in.data.labels()},
                 {"per_group_costs", sol.per_group_costs},
                 {"max_cost", sol.max_cost},
                 {"iterations", sol.iterations},
                 {"thresholds", sol.thresholds}};
    write_output(out, j.dump(2) + "\n");
    return kOk;
}

void emit(const fs::ExperimentReport& report, const std::string& out, const std::string& format) {
    const auto fmt = format == "json" ? fs::ReportFormat::Json : fs::ReportFormat::Csv;
    if (out.empty()) {
        std::cout << (fmt == fs::ReportFormat::Csv ? fs::report_to_csv(report) : fs::report_to_json(report).dump(2) + "\n");
    } else {
        fs::emit_report(report, out, fmt);
    }
    const auto a = report.aggregate();
    std::cerr << report.experiment << ": " << a.trials << " trials, mean ratio " << a.mean_ratio << ", min "
              << a.min_ratio << ", max " << a.max_ratio << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairsketch: socially fair low-rank approximation, column subset selection and regression"};
    app.require_subcommand(1);

    // lra
    auto* lra = app.add_subcommand("lra", "fair low-rank approximation");
    DataOptions lra_data;
    SketchOptions lra_sketch;
    std::string lra_method = "bicriteria";
    double lra_eps = 0.1;
    std::string lra_out;
    lra_data.add(lra, false);
    lra_sketch.add(lra);
    lra->add_option("--method", lra_method, "bicriteria | svd | search")->check(CLI::IsMember({"bicriteria", "svd", "search"}));
    lra->add_option("--eps", lra_eps, "shrink factor of the threshold search");
    lra->add_option("--out", lra_out, "output JSON path (default stdout)");

    // css
    auto* css = app.add_subcommand("css", "fair column subset selection");
    DataOptions css_data;
    SketchOptions css_sketch;
    fs::CssOptions css_opt;
    bool css_brute = false;
    std::string css_out;
    css_data.add(css, false);
    css_sketch.add(css);
    css->add_option("--css-constant", css_opt.budget_constant, "C in the column budget ceil(C k ln(k+1))");
    css->add_flag("--refit", css_opt.refit, "refit per-group factors by least squares");
    css->add_flag("--brute-force", css_brute, "exhaustive search over k-subsets");
    css->add_option("--out", css_out, "output JSON path (default stdout)");

    // regress
    auto* reg = app.add_subcommand("regress", "fair (min-max) regression");
    DataOptions reg_data;
    std::string reg_norm = "l2";
    std::string reg_method = "binary-search";
    double reg_eps = 0.05;
    int reg_iters = 200000;
    double reg_box = 0.0;
    std::string reg_export;
    double reg_threshold = 0.0;
    std::string reg_out;
    reg_data.add(reg, true);
    reg->add_option("--norm", reg_norm, "l1 | l2")->check(CLI::IsMember({"l1", "l2"}));
    reg->add_option("--method", reg_method, "stacked | subgradient | binary-search")
        ->check(CLI::IsMember({"stacked", "subgradient", "binary-search"}));
    reg->add_option("--eps", reg_eps, "binary-search accuracy");
    reg->add_option("--max-iters", reg_iters, "subgradient iteration cap");
    reg->add_option("--box", reg_box, "box radius Delta (default from the data)");
    auto* export_opt = reg->add_option("--export-lp", reg_export, "write the feasibility model for --threshold here");
    reg->add_option("--threshold", reg_threshold, "threshold L of the exported model")->needs(export_opt);
    reg->add_option("--out", reg_out, "output JSON path (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "reproduce the synthetic, credit and proof-of-concept comparisons");
    exp->require_subcommand(1);
    std::string exp_out;
    std::string exp_format = "csv";
    int exp_trials = 0;
    fs::Seed exp_seed = 0;
    unsigned exp_threads = 0;
    {
        auto* target = exp;
        target->add_option("--out", exp_out, "report path (default stdout)");
        target->add_option("--format", exp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        target->add_option("--trials", exp_trials, "trials per cell");
        target->add_option("--seed", exp_seed, "base seed");
        target->add_option("--threads", exp_threads, "worker threads (default: hardware)");
    }
    auto* synth = exp->add_subcommand("synthetic", "bicriteria vs SVD on the two-group 2x4 instance");
    std::string synth_sweep = "cell";
    fs::Index synth_dim = 3;
    double synth_p = 1.0;
    synth->add_option("--sweep", synth_sweep, "cell | dims | p")->check(CLI::IsMember({"cell", "dims", "p"}));
    synth->add_option("--g-rows", synth_dim, "sketch dimension for --sweep cell");
    synth->add_option("--p", synth_p, "Lewis exponent for --sweep cell");

    auto* credit = exp->add_subcommand("credit", "bicriteria vs SVD on the credit-card dataset");
    std::string credit_input;
    std::string credit_group = "SEX";
    std::string credit_features;
    std::string credit_sweep = "both";
    credit->add_option("--input", credit_input, "credit CSV (not bundled)")->required();
    credit->add_option("--group-col", credit_group, "sensitive attribute");
    credit->add_option("--features", credit_features, "comma-separated feature columns");
    credit->add_option("--sweep", credit_sweep, "s | k | both")->check(CLI::IsMember({"s", "k", "both"}));

    auto* poc = exp->add_subcommand("poc", "four one-row groups, fair vs standard rank-1 factor");
    // shared experiment options may follow the experiment name
    for (auto* sub : {synth, credit, poc}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (lra->parsed()) return run_lra(lra_data, lra_sketch, lra_method, lra_eps, lra_out);
        if (css->parsed()) return run_css(css_data, css_sketch, css_opt, css_brute, css_out);
        if (reg->parsed()) {
            return run_regress(reg_data, reg_norm, reg_method, reg_eps, reg_iters, reg_box, reg_export, reg_threshold,
                               reg_out);
        }
        if (synth->parsed()) {
            fs::SyntheticGrid grid = synth_sweep == "dims" ? fs::SyntheticGrid::sketch_sweep()
                                     : synth_sweep == "p"  ? fs::SyntheticGrid::p_sweep()
                                                           : fs::SyntheticGrid{};
            if (synth_sweep == "cell") {
                grid.sketch_dims = {synth_dim};
                grid.ps = {synth_p};
            }
            if (exp_trials > 0) grid.trials = exp_trials;
            if (exp_threads > 0) grid.threads = exp_threads;
            grid.seed = exp_seed;
            emit(fs::run_synthetic_lra(grid), exp_out, exp_format);
            return kOk;
        }
        if (credit->parsed()) {
            const auto in = fs::load_credit_dataset(credit_input, split_list(credit_features), credit_group);
            fs::CreditPlan plan = fs::CreditPlan::full();
            if (credit_sweep == "s") plan.ranks.clear();
            if (credit_sweep == "k") plan.subsample_sizes.clear();
            if (exp_trials > 0) plan.s_trials = plan.k_trials = exp_trials;
            if (exp_threads > 0) plan.threads = exp_threads;
            plan.seed = exp_seed;
            emit(fs::run_credit_lra(in.data, plan), exp_out, exp_format);
            return kOk;
        }
        emit(fs::run_proof_of_concept(), exp_out, exp_format);
        return kOk;
    } catch (const fs::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const fs::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const fs::ContractViolation& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const fs::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}
