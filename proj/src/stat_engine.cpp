#include "metaaudit/stat_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "metaaudit/errors.hpp"
#include "metaaudit/rng.hpp"

namespace metaaudit {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kLogSqrt2Pi = 0.9189385332046727; // log(sqrt(2 pi))
} // namespace

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double std_normal_cdf(double z) {
    if (!std::isfinite(z)) throw DomainError("std_normal_cdf: non-finite input");
    return 0.5 * std::erfc(-z / kSqrt2);
}

double log_std_normal_cdf(double z) {
    if (z > -1.0) {
        // upper tail complement stays well-scaled here
        return std::log1p(-0.5 * std::erfc(z / kSqrt2));
    }
    if (z > -37.0) {
        return std::log(0.5 * std::erfc(-z / kSqrt2));
    }
    // asymptotic phi(z)/|z| for the far lower tail, next-order correction
    return -0.5 * z * z - kLogSqrt2Pi - std::log(-z) + std::log1p(-1.0 / (z * z));
}

// AS 241 (PPND16): rational approximations on three regions of p.
double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("std_normal_quantile: p must lie in (0,1)");

    static constexpr std::array<double, 8> a = {
        3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr std::array<double, 8> b = {
        1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
        2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
        5.2264952788528545610e3};
    static constexpr std::array<double, 8> c = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr std::array<double, 8> d = {
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static constexpr std::array<double, 8> e = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr std::array<double, 8> f = {
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    auto poly = [](const std::array<double, 8>& coef, double x) {
        double r = coef[7];
        for (int i = 6; i >= 0; --i) r = r * x + coef[i];
        return r;
    };

    double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        val = poly(e, r) / poly(f, r);
    }
    return q < 0.0 ? -val : val;
}

namespace {

// n x phi(x) Phi(x)^(n-1), with the power taken in log space so large n do
// not underflow before the density does.
double max_density(double x, int n) {
    double log_term = -0.5 * x * x - kLogSqrt2Pi;
    if (n > 1) log_term += (n - 1) * log_std_normal_cdf(x);
    log_term += std::log(static_cast<double>(n));
    if (log_term < -745.0) return 0.0;
    return x * std::exp(log_term);
}

double adaptive_simpson(double (*f)(double, int), int n, double lo, double hi,
                        double flo, double fmid, double fhi, double whole,
                        double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double lmid = 0.5 * (lo + mid);
    double rmid = 0.5 * (mid + hi);
    double flmid = f(lmid, n);
    double frmid = f(rmid, n);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, n, lo, mid, flo, flmid, fmid, left, tol * 0.5, depth - 1) +
           adaptive_simpson(f, n, mid, hi, fmid, frmid, fhi, right, tol * 0.5, depth - 1);
}

double integrate(double (*f)(double, int), int n, double lo, double hi, double tol) {
    double mid = 0.5 * (lo + hi);
    double flo = f(lo, n);
    double fmid = f(mid, n);
    double fhi = f(hi, n);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return adaptive_simpson(f, n, lo, hi, flo, fmid, fhi, whole, tol, 48);
}

} // namespace

double expected_max_exact(int n) {
    if (n < 1) throw DomainError("expected_max_exact: n must be >= 1");
    if (n == 1) return 0.0;

    // truncate where the integrand drops below 1e-18
    constexpr double kCut = 1e-18;
    double lo = -13.0;
    while (lo < 0.0 && std::fabs(max_density(lo, n)) < kCut) lo += 0.25;
    double hi = 13.0;
    while (hi > 1.0 && std::fabs(max_density(hi, n)) < kCut) hi -= 0.25;
    lo -= 0.25;
    hi += 0.25;

    // split at the sign change of x so each panel is one-signed
    double tol = 2.5e-10;
    if (lo >= 0.0) return integrate(max_density, n, lo, hi, tol);
    return integrate(max_density, n, lo, 0.0, tol) + integrate(max_density, n, 0.0, hi, tol);
}

double expected_max_blom(int n, double alpha) {
    if (n < 1) throw DomainError("expected_max_blom: n must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("expected_max_blom: alpha must lie in [0,1)");
    return std_normal_quantile((n - alpha) / (n - 2.0 * alpha + 1.0));
}

std::vector<OrderStatRow> order_stat_table(std::span<const int> ns) {
    if (ns.empty()) throw DomainError("order_stat_table: empty n list");
    std::vector<OrderStatRow> rows;
    rows.reserve(ns.size());
    for (int n : ns) {
        OrderStatRow row;
        row.n = n;
        row.expected_max = expected_max_exact(n);
        row.p_two_sided = 2.0 * (1.0 - std_normal_cdf(row.expected_max));
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> table5_default_ns() {
    std::vector<int> ns;
    for (int n = 10; n <= 100; n += 10) ns.push_back(n);
    for (int n = 125; n <= 250; n += 25) ns.push_back(n);
    for (int n = 300; n <= 400; n += 50) ns.push_back(n);
    ns.push_back(1000);
    ns.push_back(5000);
    return ns;
}

std::span<const ReportedOrderStat> table5_reference() {
    static constexpr std::array<ReportedOrderStat, 21> rows = {{
        {10, 1.53875, 0.12211},  {20, 1.86748, 0.06976},  {30, 2.04276, 0.04952},
        {40, 2.16078, 0.03864},  {50, 2.24907, 0.03181},  {60, 2.31928, 0.02709},
        {70, 2.37736, 0.02364},  {80, 2.42677, 0.02099},  {90, 2.46970, 0.01890},
        {100, 2.50759, 0.01720}, {125, 2.58634, 0.01407}, {150, 2.64925, 0.01194},
        {175, 2.70148, 0.01038}, {200, 2.74604, 0.00919}, {225, 2.78485, 0.00826},
        {250, 2.81918, 0.00750}, {300, 2.87777, 0.00635}, {350, 2.92651, 0.00551},
        {400, 2.96818, 0.00487}, {1000, 3.24144, 0.00119}, {5000, 3.67755, 0.00024},
    }};
    return rows;
}

LogScaleEffect rr_to_log_scale(const EffectEstimate& effect) {
    if (!(effect.rr > 0.0 && effect.cl_low > 0.0 && effect.cl_high > effect.cl_low))
        throw DomainError("rr_to_log_scale: effect estimate must have positive rr and ordered limits");
    if (!(effect.level > 0.0 && effect.level < 1.0))
        throw DomainError("rr_to_log_scale: confidence level must lie in (0,1)");
    LogScaleEffect out;
    out.beta = std::log(effect.rr);
    double q = std_normal_quantile(0.5 * (1.0 + effect.level));
    out.beta_se = (std::log(effect.cl_high) - std::log(effect.cl_low)) / (2.0 * q);
    return out;
}

ZTestResult z_test(const EffectEstimate& effect, const ExactInt& adj_factor) {
    if (adj_factor < ExactInt(1)) throw DomainError("z_test: adjustment factor must be >= 1");
    ZTestResult r;
    LogScaleEffect ls = rr_to_log_scale(effect);
    r.beta = ls.beta;
    r.beta_se = ls.beta_se;
    r.z = r.beta / r.beta_se;
    r.p_one_sided = 1.0 - std_normal_cdf(r.z);
    r.adj_factor = adj_factor;
    r.adj_p = adjust_bonferroni(r.p_one_sided, adj_factor);
    return r;
}

ExactInt bonferroni_factor(std::uint64_t ffq_items, std::uint32_t covariates) {
    if (ffq_items == 0) throw DomainError("bonferroni_factor: ffq_items must be >= 1");
    return ExactInt(ffq_items).mul(ExactInt::pow2(covariates));
}

double adjust_bonferroni(double p, const ExactInt& m) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("adjust_bonferroni: p must lie in (0,1]");
    if (m < ExactInt(1)) throw DomainError("adjust_bonferroni: m must be >= 1");
    long double scaled = static_cast<long double>(p) * m.as_long_double();
    return scaled >= 1.0L ? 1.0 : static_cast<double>(scaled);
}

double adjust_sidak(double p, const ExactInt& m) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("adjust_sidak: p must lie in (0,1]");
    if (m < ExactInt(1)) throw DomainError("adjust_sidak: m must be >= 1");
    if (p == 1.0) return 1.0;
    long double exponent = m.as_long_double() * std::log1p(-static_cast<long double>(p));
    long double r = -std::expm1(exponent);
    return r >= 1.0L ? 1.0 : static_cast<double>(r);
}

namespace {

// Regularized incomplete beta I_x(a,b) by Lentz's continued fraction.
double incomplete_beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * incomplete_beta_cf(a, b, x) / a;
    return 1.0 - front * incomplete_beta_cf(b, a, 1.0 - x) / b;
}

} // namespace

double student_t_two_sided_p(double t, double dof) {
    if (!(dof > 0.0)) throw DomainError("student_t_two_sided_p: dof must be positive");
    if (!std::isfinite(t)) throw DomainError("student_t_two_sided_p: non-finite statistic");
    double x = dof / (dof + t * t);
    return regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

std::vector<double> correlation_raw_pvalues(const Matrix& raw, std::span<const double> outcome) {
    if (raw.rows != outcome.size())
        throw DomainError("westfall_young_minp: outcome length must match the data rows");
    if (raw.rows < 3) throw DomainError("westfall_young_minp: at least 3 subjects required");
    std::size_t n = raw.rows;
    std::size_t m = raw.cols;

    auto standardized = [](std::span<const double> xs) {
        double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        if (ss <= 0.0) throw DomainError("westfall_young_minp: degenerate (constant) column");
        std::vector<double> out(xs.size());
        double inv = 1.0 / std::sqrt(ss);
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - mean) * inv;
        return out;
    };

    std::vector<double> y = standardized(outcome);
    std::vector<double> ps(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = raw.at(i, j);
        std::vector<double> x = standardized(col);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += x[i] * y[i];
        r = std::clamp(r, -1.0 + 1e-15, 1.0 - 1e-15);
        double z = std::atanh(r) * std::sqrt(static_cast<double>(n) - 3.0);
        ps[j] = 2.0 * (1.0 - std_normal_cdf(std::fabs(z)));
    }
    return ps;
}

std::vector<double> westfall_young_minp(const Matrix& raw, std::span<const double> outcome,
                                        int b, std::uint64_t seed) {
    if (b < 100) throw DomainError("westfall_young_minp: at least 100 permutations required");
    std::vector<double> raw_p = correlation_raw_pvalues(raw, outcome);
    std::size_t m = raw_p.size();

    std::vector<double> y(outcome.begin(), outcome.end());
    Rng master(seed);
    std::vector<std::uint64_t> exceed(m, 0); // permutations with min-p <= raw_p[j]

    std::vector<double> perm_y = y;
    for (int k = 0; k < b; ++k) {
        Rng stream = master.substream(static_cast<std::uint64_t>(k));
        perm_y = y;
        stream.shuffle(std::span<double>(perm_y));
        std::vector<double> ps = correlation_raw_pvalues(raw, perm_y);
        double min_p = *std::min_element(ps.begin(), ps.end());
        for (std::size_t j = 0; j < m; ++j)
            if (min_p <= raw_p[j]) ++exceed[j];
    }

    std::vector<double> adjusted(m);
    for (std::size_t j = 0; j < m; ++j)
        adjusted[j] = static_cast<double>(1 + exceed[j]) / static_cast<double>(b + 1);

    // monotone in raw-p order
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return raw_p[i] < raw_p[j]; });
    double running = 0.0;
    for (std::size_t idx : order) {
        running = std::max(running, adjusted[idx]);
        adjusted[idx] = running;
    }
    return adjusted;
}

std::string order_stat_csv(std::span<const OrderStatRow> rows, bool compare) {
    std::string out = compare
        ? "n,expected_max,p_two_sided,reported_expected_max,reported_p,delta_expected_max,delta_p\n"
        : "n,expected_max,p_two_sided\n";
    char buf[256];
    auto reference = table5_reference();
    for (const auto& row : rows) {
        if (!compare) {
            std::snprintf(buf, sizeof buf, "%d,%.6f,%.5f\n", row.n, row.expected_max,
                          row.p_two_sided);
            out += buf;
            continue;
        }
        const ReportedOrderStat* ref = nullptr;
        for (const auto& r : reference)
            if (r.n == row.n) ref = &r;
        if (ref) {
            std::snprintf(buf, sizeof buf, "%d,%.6f,%.5f,%.5f,%.5f,%.6f,%.6f\n", row.n,
                          row.expected_max, row.p_two_sided, ref->expected_max, ref->p,
                          row.expected_max - ref->expected_max, row.p_two_sided - ref->p);
        } else {
            std::snprintf(buf, sizeof buf, "%d,%.6f,%.5f,,,,\n", row.n, row.expected_max,
                          row.p_two_sided);
        }
        out += buf;
    }
    return out;
}

} // namespace metaaudit
