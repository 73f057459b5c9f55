#pragma once

// Experiment harness: CSV ingestion keyed by a sensitive-attribute column,
// the synthetic / credit / proof-of-concept comparisons of the bicriteria
// solver against the SVD baseline, and CSV/JSON report emission.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fairsketch/errors.hpp"
#include "fairsketch/fair_lra.hpp"
#include "fairsketch/fair_regression.hpp"
#include "fairsketch/grouped.hpp"
#include "fairsketch/linalg.hpp"

namespace fairsketch {

// ---------------------------------------------------------------- ingestion

struct IngestSpec {
    std::string path;
    std::string group_column;
    std::vector<std::string> feature_columns;  // empty: every column except group, label and "ID"
    std::optional<std::string> label_column;
    std::optional<Index> row_limit;
    std::optional<Index> subsample;  // uniform sample of this many rows, before grouping
    Seed seed = 0;
};

struct IngestResult {
    GroupedMatrix data;
    std::optional<GroupedLabels> labels;
    std::vector<std::string> feature_names;
    Index rows_read = 0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (ch != '\r') {
            cell += ch;
        }
    }
    out.push_back(std::move(cell));
    return out;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string s = trim(raw);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        raise<DataError>("ingest_csv", "row " + std::to_string(row) + ", column '" + column + "': cannot parse '" + s +
                                           "' as a real number");
    }
    return v;
}

}  // namespace detail

/// Reads a headered CSV, keeps the numeric feature columns and splits rows
/// into groups by the value of the group column.
inline IngestResult ingest_csv(const IngestSpec& spec) {
    if (spec.group_column.empty()) detail::raise<InvalidParameter>("ingest_csv", "group column name is empty");
    if (std::find(spec.feature_columns.begin(), spec.feature_columns.end(), spec.group_column) !=
        spec.feature_columns.end()) {
        detail::raise<InvalidParameter>("ingest_csv", "group column '" + spec.group_column + "' is also a feature");
    }
    std::ifstream in(spec.path);
    if (!in) detail::raise<DataError>("ingest_csv", "cannot open '" + spec.path + "'");

    std::string line;
    if (!std::getline(in, line)) detail::raise<DataError>("ingest_csv", "'" + spec.path + "' has no header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> header = detail::split_csv_line(line);
    for (auto& h : header) h = detail::trim(h);

    auto column_index = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) detail::raise<DataError>("ingest_csv", "column '" + name + "' not found in header");
        return static_cast<std::size_t>(it - header.begin());
    };

    const std::size_t group_idx = column_index(spec.group_column);
    std::optional<std::size_t> label_idx;
    if (spec.label_column) label_idx = column_index(*spec.label_column);

    std::vector<std::string> features = spec.feature_columns;
    if (features.empty()) {
        for (const auto& h : header) {
            if (h == spec.group_column || (spec.label_column && h == *spec.label_column) || h == "ID") continue;
            features.push_back(h);
        }
    }
    if (spec.label_column && std::find(features.begin(), features.end(), *spec.label_column) != features.end()) {
        detail::raise<InvalidParameter>("ingest_csv", "label column is also a feature");
    }
    if (features.empty()) detail::raise<DataError>("ingest_csv", "no feature columns selected");
    std::vector<std::size_t> feature_idx;
    for (const auto& f : features) feature_idx.push_back(column_index(f));

    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    std::vector<std::string> groups;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty() || line == "\r") continue;
        if (spec.row_limit && static_cast<Index>(rows.size()) >= *spec.row_limit) break;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size()) {
            detail::raise<DataError>("ingest_csv", "row " + std::to_string(line_no) + " has " +
                                                       std::to_string(cells.size()) + " cells, header has " +
                                                       std::to_string(header.size()));
        }
        std::vector<double> r;
        r.reserve(feature_idx.size());
        for (std::size_t j = 0; j < feature_idx.size(); ++j) {
            r.push_back(detail::parse_cell(cells[feature_idx[j]], line_no, features[j]));
        }
        rows.push_back(std::move(r));
        groups.push_back(detail::trim(cells[group_idx]));
        if (label_idx) targets.push_back(detail::parse_cell(cells[*label_idx], line_no, *spec.label_column));
    }
    if (rows.empty()) detail::raise<DataError>("ingest_csv", "'" + spec.path + "' has no data rows");

    std::vector<std::size_t> keep(rows.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    if (spec.subsample && *spec.subsample < static_cast<Index>(rows.size())) {
        if (*spec.subsample < 1) detail::raise<InvalidParameter>("ingest_csv", "subsample size must be >= 1");
        std::mt19937_64 engine(spec.seed);
        std::shuffle(keep.begin(), keep.end(), engine);
        keep.resize(static_cast<std::size_t>(*spec.subsample));
        std::sort(keep.begin(), keep.end());
    }

    Matrix m(static_cast<Index>(keep.size()), static_cast<Index>(features.size()));
    std::vector<std::string> labels;
    Vector b(static_cast<Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t j = 0; j < features.size(); ++j) m(static_cast<Index>(r), static_cast<Index>(j)) = rows[keep[r]][j];
        labels.push_back(groups[keep[r]]);
        if (label_idx) b(static_cast<Index>(r)) = targets[keep[r]];
    }
    GroupedMatrix data = split_by_group(m, labels);

    std::optional<GroupedLabels> grouped_targets;
    if (label_idx) {
        GroupedLabels gl;
        for (const auto& name : data.labels()) {
            std::vector<double> part;
            for (std::size_t r = 0; r < labels.size(); ++r)
                if (labels[r] == name) part.push_back(b(static_cast<Index>(r)));
            gl.targets.push_back(Eigen::Map<const Vector>(part.data(), static_cast<Index>(part.size())));
        }
        grouped_targets = std::move(gl);
    }
    return {std::move(data), std::move(grouped_targets), std::move(features), static_cast<Index>(rows.size())};
}

/// Up to s rows drawn without replacement from every group.
inline GroupedMatrix subsample_groups(const GroupedMatrix& data, Index s, Seed seed) {
    if (s < 1) detail::raise<InvalidParameter>("subsample_groups", "s must be >= 1");
    std::mt19937_64 engine(seed);
    std::vector<Matrix> groups;
    for (const auto& a : data.groups()) {
        std::vector<Index> idx(static_cast<std::size_t>(a.rows()));
        std::iota(idx.begin(), idx.end(), Index{0});
        std::shuffle(idx.begin(), idx.end(), engine);
        idx.resize(static_cast<std::size_t>(std::min(s, a.rows())));
        std::sort(idx.begin(), idx.end());
        Matrix g(static_cast<Index>(idx.size()), a.cols());
        for (std::size_t r = 0; r < idx.size(); ++r) g.row(static_cast<Index>(r)) = a.row(idx[r]);
        groups.push_back(std::move(g));
    }
    return GroupedMatrix(std::move(groups), data.labels());
}

// ---------------------------------------------------------------- reports

struct TrialRecord {
    int trial = 0;
    Seed seed = 0;
    Index k = 0;
    double p = 1.0;
    Index sketch_dim = 0;    // rows of G = columns of H
    Index subsample = 0;     // rows per group, 0 when not subsampled
    Index rank_budget = 0;   // rows of T
    double bicrit_cost = 0.0;
    double baseline_cost = 0.0;
    double ratio = 0.0;
    double bicrit1_seconds = 0.0;  // total bicriteria time
    double bicrit2_seconds = 0.0;  // factor extraction only
    double baseline_seconds = 0.0;
};

struct ReportAggregate {
    std::size_t trials = 0;
    double mean_ratio = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<TrialRecord> records;

    [[nodiscard]] ReportAggregate aggregate() const { return aggregate_of(records); }

    static ReportAggregate aggregate_of(const std::vector<TrialRecord>& rs) {
        ReportAggregate a;
        a.trials = rs.size();
        if (rs.empty()) return a;
        double sum = 0.0;
        a.min_ratio = rs.front().ratio;
        a.max_ratio = rs.front().ratio;
        for (const auto& r : rs) {
            sum += r.ratio;
            a.min_ratio = std::min(a.min_ratio, r.ratio);
            a.max_ratio = std::max(a.max_ratio, r.ratio);
        }
        a.mean_ratio = sum / static_cast<double>(rs.size());
        return a;
    }
};

inline constexpr const char* kReportSchema = "fairsketch-report/1";
inline constexpr const char* kReportColumns =
    "trial,seed,k,p,sketch_dim,subsample,rank_budget,bicrit_cost,baseline_cost,ratio,"
    "bicrit1_seconds,bicrit2_seconds,baseline_seconds";

enum class ReportFormat { Csv, Json };

inline std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream os;
    auto real = [](double v) { return detail::format_real(v); };
    os << kReportColumns << '\n';
    for (const auto& r : report.records) {
        os << r.trial << ',' << r.seed << ',' << r.k << ',' << real(r.p) << ',' << r.sketch_dim << ',' << r.subsample
           << ',' << r.rank_budget << ',' << real(r.bicrit_cost) << ',' << real(r.baseline_cost) << ','
           << real(r.ratio) << ',' << real(r.bicrit1_seconds) << ',' << real(r.bicrit2_seconds) << ','
           << real(r.baseline_seconds) << '\n';
    }
    if (!report.records.empty()) {
        const auto a = report.aggregate();
        os << "# aggregate,trials=" << a.trials << ",mean_ratio=" << real(a.mean_ratio)
           << ",min_ratio=" << real(a.min_ratio) << ",max_ratio=" << real(a.max_ratio) << '\n';
    }
    return os.str();
}

inline nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& r : report.records) {
        trials.push_back({{"trial", r.trial},
                          {"seed", r.seed},
                          {"k", r.k},
                          {"p", r.p},
                          {"sketch_dim", r.sketch_dim},
                          {"subsample", r.subsample},
                          {"rank_budget", r.rank_budget},
                          {"bicrit_cost", r.bicrit_cost},
                          {"baseline_cost", r.baseline_cost},
                          {"ratio", r.ratio},
                          {"bicrit1_seconds", r.bicrit1_seconds},
                          {"bicrit2_seconds", r.bicrit2_seconds},
                          {"baseline_seconds", r.baseline_seconds}});
    }
    const auto a = report.aggregate();
    return {{"schema", kReportSchema},
            {"experiment", report.experiment},
            {"trials", trials},
            {"aggregate",
             {{"trials", a.trials}, {"mean_ratio", a.mean_ratio}, {"min_ratio", a.min_ratio}, {"max_ratio", a.max_ratio}}}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != kReportSchema) detail::raise<DataError>("report_from_json", "unknown report schema");
    ExperimentReport rep;
    rep.experiment = j.at("experiment").get<std::string>();
    for (const auto& t : j.at("trials")) {
        TrialRecord r;
        r.trial = t.at("trial").get<int>();
        r.seed = t.at("seed").get<Seed>();
        r.k = t.at("k").get<Index>();
        r.p = t.at("p").get<double>();
        r.sketch_dim = t.at("sketch_dim").get<Index>();
        r.subsample = t.at("subsample").get<Index>();
        r.rank_budget = t.at("rank_budget").get<Index>();
        r.bicrit_cost = t.at("bicrit_cost").get<double>();
        r.baseline_cost = t.at("baseline_cost").get<double>();
        r.ratio = t.at("ratio").get<double>();
        r.bicrit1_seconds = t.at("bicrit1_seconds").get<double>();
        r.bicrit2_seconds = t.at("bicrit2_seconds").get<double>();
        r.baseline_seconds = t.at("baseline_seconds").get<double>();
        rep.records.push_back(r);
    }
    return rep;
}

/// Writes the report; CSV has one row per trial plus a trailing "# aggregate" line.
inline void emit_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) detail::raise<DataError>("emit_report", "cannot open '" + path + "' for writing");
    if (format == ReportFormat::Csv) {
        out << report_to_csv(report);
    } else {
        out << report_to_json(report).dump(2) << '\n';
    }
    out.flush();
    if (!out) detail::raise<DataError>("emit_report", "write to '" + path + "' failed");
}

// ---------------------------------------------------------------- runners

namespace detail {

// Runs job(i) for i in [0, n) on up to `threads` workers; results land at index i.
template <class Result, class Job>
std::vector<Result> run_indexed(std::size_t n, unsigned threads, Job job) {
    std::vector<Result> out(n);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = job(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = job(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next = n;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace detail

/// One bicriteria-vs-baseline comparison on squared fair cost.
inline TrialRecord compare_with_baseline(const GroupedMatrix& data, const BicriteriaConfig& cfg, Index baseline_k) {
    using clock = std::chrono::steady_clock;
    TrialRecord r;
    r.seed = cfg.seed;
    r.k = baseline_k;
    r.sketch_dim = cfg.g_rows;

    BicriteriaConfig run = cfg;
    run.squared_cost = true;
    const FairLraSolution sol = bicriteria_fair_lra(data, run);
    r.p = sol.p;
    r.rank_budget = sol.t_rows;
    r.bicrit_cost = sol.cost;
    r.bicrit1_seconds = sol.total_seconds;
    r.bicrit2_seconds = sol.extract_seconds;

    const auto start = clock::now();
    const Matrix base = svd_baseline(data, baseline_k);
    r.baseline_seconds = detail::seconds_since(start);
    r.baseline_cost = fair_lra_cost(data, base, true);
    r.ratio = r.baseline_cost > 0.0 ? r.bicrit_cost / r.baseline_cost : 1.0;
    return r;
}

/// The two-group, four-feature instance with blocks diag(2, 2) and diag(1.99, 1.99).
inline GroupedMatrix synthetic_pair() {
    Matrix a1(2, 4), a2(2, 4);
    a1 << 2, 0, 0, 0, 0, 2, 0, 0;
    a2 << 0, 0, 1.99, 0, 0, 0, 0, 1.99;
    return GroupedMatrix({a1, a2}, {"A1", "A2"});
}

struct SyntheticGrid {
    std::vector<Index> sketch_dims{3};
    std::vector<double> ps{1.0};
    int trials = 100;
    Index k = 2;
    Seed seed = 0;
    unsigned threads = detail::default_threads();

    static SyntheticGrid sketch_sweep() {
        SyntheticGrid g;
        g.sketch_dims.clear();
        for (Index m = 1; m <= 20; ++m) g.sketch_dims.push_back(m);
        return g;
    }

    static SyntheticGrid p_sweep() {
        SyntheticGrid g;
        g.ps.clear();
        for (int p = 1; p <= 10; ++p) g.ps.push_back(p);
        return g;
    }
};

/// Bicriteria vs SVD baseline on the synthetic pair for every (sketch dim, p) cell.
inline ExperimentReport run_synthetic_lra(const SyntheticGrid& grid) {
    if (grid.trials < 1) detail::raise<InvalidParameter>("run_synthetic_lra", "trials must be >= 1");
    const GroupedMatrix data = synthetic_pair();
    struct Cell {
        Index dim;
        double p;
    };
    std::vector<Cell> cells;
    for (Index m : grid.sketch_dims)
        for (double p : grid.ps) cells.push_back({m, p});

    const std::size_t n = cells.size() * static_cast<std::size_t>(grid.trials);
    auto records = detail::run_indexed<TrialRecord>(n, grid.threads, [&](std::size_t i) {
        const Cell& cell = cells[i / static_cast<std::size_t>(grid.trials)];
        BicriteriaConfig cfg;
        cfg.k = grid.k;
        cfg.p = cell.p;
        cfg.g_rows = cell.dim;
        cfg.h_cols = cell.dim;
        cfg.seed = detail::mix_seed(grid.seed, i);
        TrialRecord r = compare_with_baseline(data, cfg, grid.k);
        r.trial = static_cast<int>(i);
        return r;
    });
    return {"synthetic", std::move(records)};
}

inline constexpr const char* kCreditFetchHelp =
    "The Default of Credit Card Clients dataset is not bundled. Download it from the UCI repository\n"
    "(https://archive.ics.uci.edu/dataset/350/default+of+credit+card+clients), export the sheet to CSV\n"
    "with a single header row (ID, LIMIT_BAL, SEX, ..., default payment next month) and pass it with --input.";

inline constexpr Index kCreditRows = 30000;
inline constexpr Index kCreditMinColumns = 23;

/// Loads the credit CSV grouped by SEX and checks its 30000 x (>= 23) shape.
inline IngestResult load_credit_dataset(const std::string& path, std::vector<std::string> features = {},
                                        const std::string& group_column = "SEX") {
    {
        std::ifstream probe(path);
        if (!probe) detail::raise<DataError>("load_credit_dataset", "'" + path + "' not found.\n" + kCreditFetchHelp);
        std::string header;
        std::getline(probe, header);
        if (static_cast<Index>(detail::split_csv_line(header).size()) < kCreditMinColumns) {
            detail::raise<DataError>("load_credit_dataset", "expected at least 23 columns in '" + path + "'");
        }
    }
    IngestSpec spec;
    spec.path = path;
    spec.group_column = group_column;
    spec.feature_columns = std::move(features);
    if (spec.feature_columns.empty()) {
        // every remaining column except the default-payment label
        std::ifstream probe(path);
        std::string header;
        std::getline(probe, header);
        if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
        for (auto h : detail::split_csv_line(header)) {
            h = detail::trim(h);
            if (h == "ID" || h == group_column || h.rfind("default", 0) == 0) continue;
            spec.feature_columns.push_back(h);
        }
    }
    IngestResult res = ingest_csv(spec);
    if (res.rows_read != kCreditRows) {
        detail::raise<DataError>("load_credit_dataset", "expected 30000 rows, read " + std::to_string(res.rows_read));
    }
    return res;
}

struct CreditPlan {
    std::vector<Index> subsample_sizes;  // s sweep at k = 1
    std::vector<Index> ranks;            // k sweep at s = k_sweep_subsample, bicriteria rank 2k
    Index k_sweep_subsample = 1000;
    int s_trials = 10000;
    int k_trials = 200;
    double p = 1.0;
    Index sketch_dim = 30;
    int lewis_iters = kDefaultLewisIterations;
    Seed seed = 0;
    unsigned threads = detail::default_threads();

    static CreditPlan full() {
        CreditPlan plan;
        for (Index s = 2; s <= 21; ++s) plan.subsample_sizes.push_back(s);
        for (Index k = 1; k <= 8; ++k) plan.ranks.push_back(k);
        return plan;
    }
};

/// Credit sweeps: per trial, s rows are drawn from each group, then the
/// bicriteria solver (G with sketch_dim rows, H with sketch_dim columns)
/// is compared to the rank-k SVD baseline on the subsample.
inline ExperimentReport run_credit_lra(const GroupedMatrix& data, const CreditPlan& plan) {
    struct Job {
        Index s;
        Index k;
        Index rank_budget;
        int trial;
    };
    std::vector<Job> jobs;
    for (Index s : plan.subsample_sizes)
        for (int t = 0; t < plan.s_trials; ++t) jobs.push_back({s, 1, 1, t});
    for (Index k : plan.ranks)
        for (int t = 0; t < plan.k_trials; ++t) jobs.push_back({plan.k_sweep_subsample, k, 2 * k, t});

    auto records = detail::run_indexed<TrialRecord>(jobs.size(), plan.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        const Seed seed = detail::mix_seed(plan.seed, i);
        const GroupedMatrix sub = subsample_groups(data, job.s, detail::mix_seed(seed, 7));
        BicriteriaConfig cfg;
        cfg.k = job.k;
        cfg.p = plan.p;
        cfg.g_rows = plan.sketch_dim;
        cfg.h_cols = plan.sketch_dim;
        cfg.lewis_iters = plan.lewis_iters;
        cfg.lewis_samples = job.rank_budget;
        cfg.seed = seed;
        TrialRecord r = compare_with_baseline(sub, cfg, std::min(job.k, sub.cols()));
        r.trial = static_cast<int>(i);
        r.subsample = job.s;
        return r;
    });
    return {"credit", std::move(records)};
}

/// Two groups with 17 heterogeneously scaled, correlated features, shaped
/// like the credit data (used for timing checks when the real file is absent).
inline GroupedMatrix credit_shaped_instance(Index rows, Index features, Seed seed) {
    const Matrix mix = gaussian_matrix(features, features, detail::mix_seed(seed, 1));
    Matrix scales = Matrix::Zero(features, features);
    for (Index j = 0; j < features; ++j) scales(j, j) = std::pow(10.0, static_cast<double>(j % 5));
    const Index n1 = rows * 3 / 5;
    Matrix a1 = gaussian_matrix(n1, features, detail::mix_seed(seed, 2)) * mix * scales;
    Matrix a2 = gaussian_matrix(rows - n1, features, detail::mix_seed(seed, 3)) * mix.transpose() * scales;
    return GroupedMatrix({std::move(a1), std::move(a2)}, {"1", "2"});
}

/// Four one-row groups: (1, 0) and three copies of (0, 1); rank-1 factors
/// (sqrt(2)/2, sqrt(2)/2) (fair) against (0, 1) (standard SVD answer).
inline ExperimentReport run_proof_of_concept() {
    Matrix e1(1, 2), e2(1, 2);
    e1 << 1, 0;
    e2 << 0, 1;
    const GroupedMatrix data({e1, e2, e2, e2}, {"A1", "A2", "A3", "A4"});
    Matrix fair(1, 2), standard(1, 2);
    fair << std::sqrt(2.0) / 2.0, std::sqrt(2.0) / 2.0;
    standard << 0, 1;

    TrialRecord r;
    r.k = 1;
    r.rank_budget = 1;
    r.bicrit_cost = fair_lra_cost(data, fair, true);
    r.baseline_cost = fair_lra_cost(data, standard, true);
    r.ratio = r.bicrit_cost / r.baseline_cost;
    return {"poc", {r}};
}

}  // namespace fairsketch
