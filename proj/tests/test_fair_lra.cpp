#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace fs = fairsketch;
using fstest::Index;
using fstest::Matrix;
using fstest::Vector;

namespace {

double eckart_young_tail(const Matrix& a, Index k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a.transpose() * a);
    const Vector ev = eig.eigenvalues();
    double tail = 0.0;
    for (Index j = 0; j < ev.size() - k; ++j) tail += std::max(0.0, ev(j));
    return tail;
}

fs::BicriteriaConfig synthetic_config(double p, fs::Seed seed) {
    fs::BicriteriaConfig cfg;
    cfg.k = 2;
    cfg.p = p;
    cfg.g_rows = 3;
    cfg.h_cols = 3;
    cfg.squared_cost = true;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(Config, Validation) {
    fs::BicriteriaConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.c = 1.0;
    EXPECT_THROW(cfg.validate(), fs::InvalidParameter);
    cfg = {};
    cfg.k = 0;
    EXPECT_THROW(cfg.validate(), fs::InvalidParameter);
    cfg = {};
    cfg.p = 0.5;
    EXPECT_THROW(cfg.validate(), fs::InvalidParameter);
    cfg = {};
    cfg.g_rows = 0;
    EXPECT_THROW(cfg.validate(), fs::InvalidParameter);
}

TEST(Config, DefaultsAndResolvedP) {
    const fs::BicriteriaConfig cfg;
    EXPECT_EQ(cfg.g_rows, 30);
    EXPECT_EQ(cfg.h_cols, 30);
    EXPECT_EQ(cfg.lewis_iters, 10);
    EXPECT_EQ(cfg.resolved_p(2), 1.0);
    fs::BicriteriaConfig big;
    big.c = 0.9;
    EXPECT_EQ(big.resolved_p(100), std::round(0.9 * std::log(100.0)));
    big.p = 7.0;
    EXPECT_EQ(big.resolved_p(100), 7.0);
}

TEST(SvdBaseline, Examples) {
    const auto pair = fs::synthetic_pair();
    EXPECT_NEAR(fs::fair_lra_cost(pair, fs::svd_baseline(pair, 2), true), 7.9202, 1e-9);

    std::mt19937_64 rng(1);
    const Matrix a = fstest::random_matrix(6, 5, rng);
    EXPECT_NEAR(fs::fair_lra_cost(fs::GroupedMatrix({a}), fs::svd_baseline(fs::GroupedMatrix({a}), 2), true),
                eckart_young_tail(a, 2), 1e-8);

    const fs::GroupedMatrix low({fstest::random_rank(4, 6, 2, rng), fstest::random_rank(3, 6, 1, rng)});
    // the stacked rank is at most 3
    EXPECT_LE(fs::fair_lra_cost(low, fs::svd_baseline(low, 3)), 1e-8);

    EXPECT_THROW(fs::svd_baseline(pair, 0), fs::InvalidParameter);
    EXPECT_THROW(fs::svd_baseline(pair, 5), fs::InvalidParameter);
}

TEST(SvdBaseline, KLargerThanRowCount) {
    const fs::GroupedMatrix one({Matrix::Ones(1, 4)});
    const Matrix v = fs::svd_baseline(one, 3);
    ASSERT_EQ(v.rows(), 3);
    EXPECT_LE((v * v.transpose() - Matrix::Identity(3, 3)).norm(), 1e-10);
    EXPECT_LE(fs::fair_lra_cost(one, v), 1e-10);
}

TEST(Bicriteria, SyntheticMeanRatioBelowPointNine) {
    const double base = fs::fair_lra_cost(fs::synthetic_pair(), fs::svd_baseline(fs::synthetic_pair(), 2), true);
    double total = 0.0;
    for (fs::Seed s = 0; s < 100; ++s) {
        total += fs::bicriteria_fair_lra(fs::synthetic_pair(), synthetic_config(1.0, s)).cost / base;
    }
    EXPECT_LT(total / 100.0, 0.9);
}

TEST(Bicriteria, ExactRankOneRecovered) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = fstest::random_rank(8, 6, 1, rng);
        fs::BicriteriaConfig cfg;
        cfg.k = 1;
        cfg.seed = static_cast<fs::Seed>(t);
        const auto sol = fs::bicriteria_fair_lra(fs::GroupedMatrix({a}), cfg);
        EXPECT_LE(sol.cost, 1e-6 * a.norm());
        EXPECT_EQ(sol.rank, 1);
    }
}

TEST(Bicriteria, ZeroData) {
    fs::BicriteriaConfig cfg;
    cfg.k = 2;
    const auto sol = fs::bicriteria_fair_lra(fs::GroupedMatrix({Matrix::Zero(3, 4), Matrix::Zero(2, 4)}), cfg);
    EXPECT_EQ(sol.cost, 0.0);
    EXPECT_EQ(sol.factor.norm(), 0.0);
}

TEST(Bicriteria, RecordsConsistentDiagnostics) {
    std::mt19937_64 rng(3);
    const fs::GroupedMatrix data({fstest::random_matrix(20, 7, rng), fstest::random_matrix(15, 7, rng),
                                  fstest::random_matrix(9, 7, rng)});
    fs::BicriteriaConfig cfg;
    cfg.k = 2;
    cfg.g_rows = 10;
    cfg.h_cols = 5;
    cfg.lewis_samples = 4;
    cfg.seed = 11;
    const auto sol = fs::bicriteria_fair_lra(data, cfg);
    EXPECT_NEAR(sol.cost, fs::fair_lra_cost(data, sol.factor), 1e-9);
    EXPECT_EQ(sol.g_rows, 10);
    EXPECT_EQ(sol.h_cols, 5);
    EXPECT_EQ(sol.t_rows, 4);
    EXPECT_EQ(sol.s_cols, 5);
    EXPECT_EQ(sol.factor.cols(), 7);
    EXPECT_LE(sol.rank, std::min(sol.t_rows, sol.s_cols));
    EXPECT_EQ(sol.p, 1.0);
    EXPECT_GT(sol.total_seconds, 0.0);
    EXPECT_GT(sol.extract_seconds, 0.0);
    EXPECT_LT(sol.extract_seconds, sol.total_seconds);
    // lower-bound certificate
    EXPECT_LE(fs::fair_lra_lower_bound(data, sol.rank), sol.cost + 1e-9);
}

TEST(Bicriteria, Deterministic) {
    const auto a = fs::bicriteria_fair_lra(fs::synthetic_pair(), synthetic_config(3.0, 42));
    const auto b = fs::bicriteria_fair_lra(fs::synthetic_pair(), synthetic_config(3.0, 42));
    EXPECT_TRUE(a.factor == b.factor);
    EXPECT_EQ(a.cost, b.cost);
}

TEST(Bicriteria, RepeatsKeepCheapest) {
    auto cfg = synthetic_config(1.0, 5);
    double worst_single = 0.0, best_single = std::numeric_limits<double>::infinity();
    cfg.repeats = 6;
    const auto many = fs::bicriteria_fair_lra(fs::synthetic_pair(), cfg);
    for (int r = 0; r < 6; ++r) {
        auto one = cfg;
        one.repeats = 1;
        one.seed = r == 0 ? cfg.seed : fs::detail::mix_seed(cfg.seed, 100 + static_cast<fs::Seed>(r));
        const double c = fs::bicriteria_fair_lra(fs::synthetic_pair(), one).cost;
        worst_single = std::max(worst_single, c);
        best_single = std::min(best_single, c);
    }
    EXPECT_EQ(many.cost, best_single);
    EXPECT_LE(many.cost, worst_single);
}

TEST(Bicriteria, LewisColumnSampler) {
    std::mt19937_64 rng(4);
    const fs::GroupedMatrix data({fstest::random_matrix(30, 12, rng), fstest::random_matrix(25, 12, rng)});
    fs::BicriteriaConfig cfg;
    cfg.k = 2;
    cfg.column_sampler = fs::ColumnSampler::LewisColumns;
    cfg.seed = 3;
    const auto sol = fs::bicriteria_fair_lra(data, cfg);
    EXPECT_EQ(sol.s_cols, fs::lewis_column_budget(2, 12, 1.0));
    EXPECT_LE(sol.rank, std::min(sol.t_rows, sol.s_cols));
    EXPECT_NEAR(sol.cost, fs::fair_lra_cost(data, sol.factor), 1e-9);
}

TEST(LowerBound, BelowEveryRandomFactor) {
    std::mt19937_64 rng(5);
    const fs::GroupedMatrix data({fstest::random_matrix(6, 5, rng), fstest::random_matrix(4, 5, rng)});
    const double lb = fs::fair_lra_lower_bound(data, 2, true);
    for (int t = 0; t < 100; ++t) {
        EXPECT_LE(lb, fs::fair_lra_cost(data, fstest::random_matrix(2, 5, rng), true) + 1e-9);
    }
    EXPECT_LE(lb, fs::fair_lra_cost(data, fs::svd_baseline(data, 2), true) + 1e-9);
}

TEST(Alternating, AcceptsWhenBaselineQualifies) {
    const auto pair = fs::synthetic_pair();
    fs::AlternatingOptions opt;
    opt.squared = true;
    const auto v = fs::alternating_feasibility(pair, 2, 7.9202 + 1e-9, opt);
    ASSERT_TRUE(v.has_value());
    EXPECT_LE(fs::fair_lra_cost(pair, *v, true), 7.9202 + 1e-9);
}

TEST(Alternating, RejectsBelowLowerBound) {
    std::mt19937_64 rng(6);
    const fs::GroupedMatrix data({fstest::random_matrix(6, 5, rng), fstest::random_matrix(5, 5, rng)});
    const double lb = fs::fair_lra_lower_bound(data, 2);
    fs::AlternatingOptions opt;
    opt.iters = 50;
    EXPECT_FALSE(fs::alternating_feasibility(data, 2, 0.99 * lb, opt).has_value());
}

TEST(Alternating, ReachesNearOptimumOnSyntheticPair) {
    const auto pair = fs::synthetic_pair();
    fs::AlternatingOptions opt;
    opt.squared = true;
    const auto v = fs::alternating_feasibility(pair, 2, 4.5, opt);
    ASSERT_TRUE(v.has_value());
    EXPECT_LE(fs::fair_lra_cost(pair, *v, true), 4.5);
}

TEST(BinarySearch, SingleGroupNearEckartYoung) {
    std::mt19937_64 rng(7);
    const Matrix a = fstest::random_matrix(7, 5, rng);
    const fs::GroupedMatrix data({a});
    const double eps = 0.1;
    fs::AlternatingOptions opt;
    opt.iters = 30;
    const auto res = fs::binary_search_fair_lra(data, 2, eps, fs::make_alternating_oracle(data, 2, opt));
    EXPECT_LE(res.cost, (1 + eps) * std::sqrt(eckart_young_tail(a, 2)) + 1e-6);
}

TEST(BinarySearch, ZeroData) {
    const fs::GroupedMatrix data({Matrix::Zero(2, 3)});
    const auto res = fs::binary_search_fair_lra(data, 1, 0.1, fs::make_alternating_oracle(data, 1));
    EXPECT_EQ(res.cost, 0.0);
}

TEST(BinarySearch, SyntheticPairBeatsBaselineAndIsMonotone) {
    const auto pair = fs::synthetic_pair();
    fs::AlternatingOptions opt;
    opt.squared = true;
    const double eps = 0.1;
    const auto res = fs::binary_search_fair_lra(pair, 2, eps, fs::make_alternating_oracle(pair, 2, opt), {}, true);
    EXPECT_LE(res.cost, 7.9202 + 1e-9);
    EXPECT_LE(res.cost, 4.5);
    EXPECT_FALSE(res.fell_back_to_baseline);
    for (std::size_t i = 1; i < res.recorded_costs.size(); ++i) {
        EXPECT_LE(res.recorded_costs[i], res.recorded_costs[i - 1]);
    }
    const double bound = std::ceil(std::log(res.alpha0 / (1e-9 * res.alpha0)) / std::log1p(eps));
    EXPECT_LE(res.iterations, static_cast<int>(bound));
    EXPECT_NEAR(res.cost, fs::fair_lra_cost(pair, res.factor, true), 1e-12);
}

TEST(BinarySearch, FallsBackWhenOracleRefusesAlpha0) {
    const auto pair = fs::synthetic_pair();
    const auto res = fs::binary_search_fair_lra(
        pair, 2, 0.1, [](double) { return std::optional<Matrix>{}; }, {}, true);
    EXPECT_TRUE(res.fell_back_to_baseline);
    EXPECT_EQ(res.iterations, 0);
    EXPECT_NEAR(res.cost, 7.9202, 1e-9);
}

TEST(BinarySearch, DetectsLyingOracle) {
    const auto pair = fs::synthetic_pair();
    const auto liar = [](double) { return std::optional<Matrix>{Matrix::Zero(1, 4)}; };
    EXPECT_THROW(fs::binary_search_fair_lra(pair, 2, 0.1, liar, {}, true), fs::ContractViolation);
    EXPECT_THROW(fs::binary_search_fair_lra(pair, 2, 1.5, liar), fs::InvalidParameter);
}

TEST(BinarySearch, FloorTerminatesWithPerfectOracle) {
    // an oracle that always returns the full-rank projection (cost 0)
    const auto pair = fs::synthetic_pair();
    const auto perfect = [](double) { return std::optional<Matrix>{Matrix::Identity(4, 4)}; };
    const double eps = 0.5;
    const auto res = fs::binary_search_fair_lra(pair, 2, eps, perfect, {}, true);
    EXPECT_EQ(res.cost, 0.0);
    const int bound = static_cast<int>(std::ceil(std::log(1e9) / std::log1p(eps)));
    EXPECT_LE(res.iterations, bound + 1);
    EXPECT_GE(res.iterations, bound - 1);
}
