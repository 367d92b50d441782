#include "metaaudit/null_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "metaaudit/errors.hpp"
#include "metaaudit/stat_engine.hpp"

namespace metaaudit {

namespace {

// substream tags per column role
constexpr std::uint64_t kTagOutcome = 0x01;
constexpr std::uint64_t kTagPredictor = 0x02;
constexpr std::uint64_t kTagCovariate = 0x03;
constexpr std::uint64_t kTagSubsets = 0x04;

void fill_normal_column(Rng rng, std::vector<double>& col) {
    for (double& x : col) x = rng.next_normal();
}

// Cholesky solve of the normal equations; returns the predictor coefficient,
// its z-equivalent and two-sided p. Column 1 of the design is the predictor.
struct FitResult {
    double beta = 0.0;
    double z = 0.0;
    double p = 1.0;
};

FitResult fit_predictor(const std::vector<const std::vector<double>*>& columns,
                        const std::vector<double>& y) {
    std::size_t k = columns.size();
    std::size_t n = y.size();

    std::vector<double> xtx(k * k, 0.0);
    std::vector<double> xty(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        const auto& ca = *columns[a];
        for (std::size_t b = a; b < k; ++b) {
            const auto& cb = *columns[b];
            double s = 0.0;
            if (ca.empty()) { // intercept marker
                s = cb.empty() ? static_cast<double>(n) : 0.0;
                if (!cb.empty())
                    for (double v : cb) s += v;
            } else if (cb.empty()) {
                for (double v : ca) s += v;
            } else {
                for (std::size_t i = 0; i < n; ++i) s += ca[i] * cb[i];
            }
            xtx[a * k + b] = s;
            xtx[b * k + a] = s;
        }
        double s = 0.0;
        if (ca.empty())
            for (double v : y) s += v;
        else
            for (std::size_t i = 0; i < n; ++i) s += ca[i] * y[i];
        xty[a] = s;
    }

    // in-place Cholesky xtx = L L^T
    std::vector<double>& L = xtx;
    for (std::size_t j = 0; j < k; ++j) {
        double diag = L[j * k + j];
        for (std::size_t t = 0; t < j; ++t) diag -= L[j * k + t] * L[j * k + t];
        if (diag <= 0.0) throw DomainError("simulate_study: singular design matrix");
        diag = std::sqrt(diag);
        L[j * k + j] = diag;
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = L[i * k + j];
            for (std::size_t t = 0; t < j; ++t) s -= L[i * k + t] * L[j * k + t];
            L[i * k + j] = s / diag;
        }
    }

    auto solve = [&](std::vector<double> rhs) {
        for (std::size_t i = 0; i < k; ++i) {
            double s = rhs[i];
            for (std::size_t t = 0; t < i; ++t) s -= L[i * k + t] * rhs[t];
            rhs[i] = s / L[i * k + i];
        }
        for (std::size_t ii = k; ii-- > 0;) {
            double s = rhs[ii];
            for (std::size_t t = ii + 1; t < k; ++t) s -= L[t * k + ii] * rhs[t];
            rhs[ii] = s / L[ii * k + ii];
        }
        return rhs;
    };

    std::vector<double> beta = solve(xty);

    double yty = 0.0;
    for (double v : y) yty += v * v;
    double fitted = 0.0;
    for (std::size_t a = 0; a < k; ++a) fitted += beta[a] * xty[a];
    double rss = std::max(yty - fitted, 0.0);
    double dof = static_cast<double>(n) - static_cast<double>(k);
    double sigma2 = rss / dof;

    std::vector<double> e(k, 0.0);
    e[1] = 1.0; // predictor slot
    std::vector<double> inv_col = solve(std::move(e));
    double var_beta = sigma2 * inv_col[1];

    FitResult r;
    r.beta = beta[1];
    double t = beta[1] / std::sqrt(var_beta);
    r.p = student_t_two_sided_p(t, dof);
    // probit transform keeps the reported statistic exactly standard normal
    // under the null for any dof
    double half = std::clamp(0.5 * r.p, 1e-300, 1.0 - 1e-16);
    r.z = std::copysign(std_normal_quantile(1.0 - half), t);
    return r;
}

// Covariate subsets as bitmasks. Exhaustive when feasible, otherwise the
// empty model plus a prefix of a seeded distinct-mask stream, so enlarging
// model_cap only appends subsets.
std::vector<std::uint64_t> covariate_subsets(const SimConfig& config, Rng rng) {
    int c = config.n_covariates;
    if (c == 0) return {0};
    std::uint64_t total = c >= 64 ? UINT64_MAX : (1ULL << c);
    if (c < 63 && total <= config.model_cap) {
        std::vector<std::uint64_t> all(total);
        for (std::uint64_t i = 0; i < total; ++i) all[i] = i;
        return all;
    }
    std::vector<std::uint64_t> picked = {0};
    std::unordered_set<std::uint64_t> seen = {0};
    while (picked.size() < config.model_cap) {
        std::uint64_t mask = c >= 64 ? rng.next_u64() : rng.next_below(total);
        if (seen.insert(mask).second) picked.push_back(mask);
    }
    return picked;
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_and_se(std::span<const double> xs) {
    double mean = pairwise_mean(xs);
    if (xs.size() < 2) return {mean, 0.0};
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
    double var = pairwise_sum(sq) / (static_cast<double>(xs.size()) - 1.0);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

void parallel_for(std::uint64_t count, unsigned n_threads,
                  const std::function<void(std::uint64_t)>& body) {
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, count));
    if (n_threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::uint64_t i = t; i < count; i += n_threads) body(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace

void validate_config(const SimConfig& config) {
    if (config.n_subjects < 10) throw DomainError("sim config: n_subjects must be >= 10");
    if (config.n_outcomes < 1) throw DomainError("sim config: n_outcomes must be >= 1");
    if (config.n_predictors < 1) throw DomainError("sim config: n_predictors must be >= 1");
    if (config.n_covariates < 0) throw DomainError("sim config: n_covariates must be >= 0");
    if (config.model_cap < 1) throw DomainError("sim config: model_cap must be >= 1");
    if (config.replications < 1) throw DomainError("sim config: replications must be >= 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw DomainError("sim config: alpha must lie in (0,1)");
    if (config.n_subjects <= config.n_covariates + 2)
        throw DomainError("sim config: unidentifiable fits, n_subjects must exceed n_covariates + 2");
}

RepOutcome simulate_study(const SimConfig& config, std::uint64_t replication_index) {
    validate_config(config);
    Rng rep_stream = Rng(config.seed).substream(replication_index);
    std::size_t n = static_cast<std::size_t>(config.n_subjects);

    std::vector<std::vector<double>> outcomes(config.n_outcomes, std::vector<double>(n));
    for (int o = 0; o < config.n_outcomes; ++o)
        fill_normal_column(rep_stream.substream(kTagOutcome).substream(o), outcomes[o]);
    std::vector<std::vector<double>> predictors(config.n_predictors, std::vector<double>(n));
    for (int p = 0; p < config.n_predictors; ++p)
        fill_normal_column(rep_stream.substream(kTagPredictor).substream(p), predictors[p]);
    std::vector<std::vector<double>> covariates(config.n_covariates, std::vector<double>(n));
    for (int c = 0; c < config.n_covariates; ++c)
        fill_normal_column(rep_stream.substream(kTagCovariate).substream(c), covariates[c]);

    std::vector<std::uint64_t> subsets =
        covariate_subsets(config, rep_stream.substream(kTagSubsets));

    RepOutcome out;
    out.min_p = 1.0;
    out.max_z = -std::numeric_limits<double>::infinity();
    const std::vector<double> intercept; // empty marker = constant column
    for (const auto& y : outcomes) {
        for (const auto& x : predictors) {
            for (std::uint64_t mask : subsets) {
                std::vector<const std::vector<double>*> cols = {&intercept, &x};
                for (int c = 0; c < config.n_covariates; ++c)
                    if (mask & (1ULL << c)) cols.push_back(&covariates[c]);
                FitResult fit = fit_predictor(cols, y);
                out.min_p = std::min(out.min_p, fit.p);
                out.max_abs_z = std::max(out.max_abs_z, std::fabs(fit.z));
                if (fit.z > out.max_z) {
                    out.max_z = fit.z;
                    out.selected_beta = fit.beta;
                }
            }
        }
    }
    return out;
}

SimResult run(const SimConfig& config, unsigned n_threads) {
    validate_config(config);
    SimResult result;
    std::uint64_t reps = config.replications;
    result.min_p.resize(reps);
    result.max_abs_z.resize(reps);
    result.max_z.resize(reps);
    std::vector<double> selected(reps);

    parallel_for(reps, n_threads, [&](std::uint64_t i) {
        RepOutcome rep = simulate_study(config, i);
        result.min_p[i] = rep.min_p;
        result.max_abs_z[i] = rep.max_abs_z;
        result.max_z[i] = rep.max_z;
        selected[i] = rep.selected_beta;
    });

    std::uint64_t rejections = 0;
    for (double p : result.min_p)
        if (p < config.alpha) ++rejections;
    result.fwer_hat = static_cast<double>(rejections) / static_cast<double>(reps);
    MeanSe ms = mean_and_se(selected);
    result.selected_beta_mean = ms.mean;
    result.selected_beta_se = ms.se;
    return result;
}

EmpiricalMax empirical_expected_max(int k, std::uint64_t replications, std::uint64_t seed) {
    if (k < 1) throw DomainError("empirical_expected_max: k must be >= 1");
    if (replications < 1000)
        throw DomainError("empirical_expected_max: at least 1000 replications required");
    std::vector<double> maxima(replications);
    Rng master(seed);
    parallel_for(replications, 0, [&](std::uint64_t i) {
        Rng stream = master.substream(i);
        double best = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) best = std::max(best, stream.next_normal());
        maxima[i] = best;
    });
    MeanSe ms = mean_and_se(maxima);
    return {ms.mean, ms.se};
}

std::string sim_result_json(const SimConfig& config, const SimResult& result, bool full) {
    nlohmann::ordered_json doc;
    doc["config"] = {{"n_subjects", config.n_subjects},
                     {"n_outcomes", config.n_outcomes},
                     {"n_predictors", config.n_predictors},
                     {"n_covariates", config.n_covariates},
                     {"model_cap", config.model_cap},
                     {"replications", config.replications},
                     {"alpha", config.alpha},
                     {"seed", config.seed}};
    doc["fwer_hat"] = result.fwer_hat;
    doc["selected_beta_mean"] = result.selected_beta_mean;
    doc["selected_beta_se"] = result.selected_beta_se;
    if (full) {
        doc["min_p"] = result.min_p;
        doc["max_abs_z"] = result.max_abs_z;
        doc["max_z"] = result.max_z;
    }
    return doc.dump(2) + "\n";
}

std::string min_p_csv(const SimResult& result) {
    std::string csv = "p\n";
    char buf[64];
    for (double p : result.min_p) {
        std::snprintf(buf, sizeof buf, "%.10g\n", p);
        csv += buf;
    }
    return csv;
}

} // namespace metaaudit
