#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "metaaudit/def_model.hpp"
#include "metaaudit/exact_int.hpp"

namespace metaaudit {

double std_normal_pdf(double x);

// Phi(z). Absolute error below 1e-14 for |z| <= 8. Throws DomainError on
// non-finite input.
double std_normal_cdf(double z);

// log Phi(z), stable far into the lower tail.
double log_std_normal_cdf(double z);

// Phi^-1(p) for p in (0,1), Wichura's AS 241 (PPND16).
double std_normal_quantile(double p);

// E[max of n iid standard normals] = n * Int x phi(x) Phi(x)^(n-1) dx by
// adaptive quadrature on a truncated domain; absolute error <= 1e-6.
double expected_max_exact(int n);

// Blom's approximation Phi^-1((n - alpha)/(n - 2 alpha + 1)).
double expected_max_blom(int n, double alpha = 0.375);

struct OrderStatRow {
    int n = 0;
    double expected_max = 0.0;
    double p_two_sided = 1.0; // 2 (1 - Phi(expected_max))
};

std::vector<OrderStatRow> order_stat_table(std::span<const int> ns);

// Default N grid of the bundled reference table.
std::vector<int> table5_default_ns();

// Reference rows as printed in the audited table, for side-by-side
// comparison; the p column's generating formula there is unknown, so rows
// carry the printed value verbatim.
struct ReportedOrderStat {
    int n;
    double expected_max;
    double p;
};
std::span<const ReportedOrderStat> table5_reference();

struct LogScaleEffect {
    double beta = 0.0;    // ln(rr)
    double beta_se = 0.0; // CI width on the log scale over twice the normal quantile
};

LogScaleEffect rr_to_log_scale(const EffectEstimate& effect);

// One z-test row: log-scale effect, upper-tail p, and its Bonferroni-style
// adjustment.
struct ZTestResult {
    double beta = 0.0;
    double beta_se = 0.0;
    double z = 0.0;
    double p_one_sided = 1.0; // 1 - Phi(z)
    ExactInt adj_factor{1};
    double adj_p = 1.0; // min(1, p * factor)
};

ZTestResult z_test(const EffectEstimate& effect, const ExactInt& adj_factor);

// ffq_items * 2^covariates, exact.
ExactInt bonferroni_factor(std::uint64_t ffq_items, std::uint32_t covariates);

double adjust_bonferroni(double p, const ExactInt& m);

// 1 - (1-p)^m via expm1/log1p so tiny p keep their precision.
double adjust_sidak(double p, const ExactInt& m);

// Two-sided CDF complement helpers for the simulator.
double student_t_two_sided_p(double t, double dof);

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Single-step minP adjustment (resampling-based multiple testing): permute
// the outcome b times on per-permutation substreams of `seed`, compare each
// hypothesis's raw p against the permutation distribution of the minimum p,
// estimate adjusted p with the add-one estimator (1 + count)/(b + 1), and
// enforce monotonicity in raw-p order. Raw p's are two-sided tests of zero
// correlation via the Fisher transform, z = atanh(r) sqrt(n - 3).
std::vector<double> westfall_young_minp(const Matrix& raw,
                                        std::span<const double> outcome,
                                        int b, std::uint64_t seed);

// Raw two-sided correlation p-values as used inside westfall_young_minp.
std::vector<double> correlation_raw_pvalues(const Matrix& raw,
                                            std::span<const double> outcome);

// CSV export of an order-statistic table: n, expected_max (6 decimals),
// p_two_sided (5 decimals). With `compare`, appends the reference rows and
// per-row deltas.
std::string order_stat_csv(std::span<const OrderStatRow> rows, bool compare = false);

} // namespace metaaudit
