// Two small groups; compares the fair bicriteria factor with the plain SVD one.

#include <iostream>

#include "fairsketch/fairsketch.hpp"

int main() {
    namespace fs = fairsketch;
    const fs::GroupedMatrix data = fs::synthetic_pair();

    fs::BicriteriaConfig cfg;
    cfg.k = 2;
    cfg.g_rows = 3;
    cfg.h_cols = 3;
    cfg.seed = 7;
    cfg.squared_cost = true;

    const auto fair = fs::bicriteria_fair_lra(data, cfg);
    const auto svd = fs::svd_baseline(data, cfg.k);
    std::cout << "bicriteria cost " << fair.cost << " (rank " << fair.rank << ")\n"
              << "svd cost        " << fs::fair_lra_cost(data, svd, true) << '\n';
}
