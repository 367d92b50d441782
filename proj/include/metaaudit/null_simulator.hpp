#pragma once

#include <cstdint>
#include <vector>

#include "metaaudit/rng.hpp"

namespace metaaudit {

// Seeded Monte Carlo laboratory: global-null studies, exploratory model
// search over outcome x predictor x covariate-subset space, min-p / max-z /
// selection-bias summaries.
struct SimConfig {
    int n_subjects = 100;
    int n_outcomes = 1;
    int n_predictors = 1;
    int n_covariates = 0;
    std::uint64_t model_cap = 1;   // max covariate subsets examined
    std::uint64_t replications = 1;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

void validate_config(const SimConfig& config); // throws DomainError

struct RepOutcome {
    double min_p = 1.0;        // smallest two-sided p over all fits
    double max_abs_z = 0.0;    // two-sided winner
    double max_z = 0.0;        // signed (one-sided) winner
    double selected_beta = 0.0; // predictor coefficient of the max-z model
};

// One replication on its own substream of config.seed; every column of the
// design gets a per-(role,index) stream so enlarging the search space keeps
// the existing draws fixed.
RepOutcome simulate_study(const SimConfig& config, std::uint64_t replication_index);

struct SimResult {
    std::vector<double> min_p;
    std::vector<double> max_abs_z;
    std::vector<double> max_z;
    double fwer_hat = 0.0;          // fraction of replications with min_p < alpha
    double selected_beta_mean = 0.0;
    double selected_beta_se = 0.0;  // Monte Carlo standard error of the mean
};

// Deterministic for a given (config, seed) regardless of thread count;
// n_threads = 0 picks the hardware concurrency.
SimResult run(const SimConfig& config, unsigned n_threads = 0);

struct EmpiricalMax {
    double mean = 0.0;
    double mc_se = 0.0;
};

// Mean of the max of k iid standard normals; the Monte Carlo side of the
// dual check against expected_max_exact. Requires replications >= 1000.
EmpiricalMax empirical_expected_max(int k, std::uint64_t replications, std::uint64_t seed);

// JSON export per the external interface: config echo plus summaries, with
// per-replication arrays behind `full`.
std::string sim_result_json(const SimConfig& config, const SimResult& result, bool full);

// CSV of per-replication min_p values, consumable by the p-value plot.
std::string min_p_csv(const SimResult& result);

} // namespace metaaudit
