#include "metaaudit/pvalue_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "metaaudit/errors.hpp"

namespace metaaudit {

namespace {

std::string fmt_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

PPlotSeries pplot_points(std::span<const double> ps) {
    if (ps.empty()) throw DomainError("pplot_points: empty p-value list");
    for (double p : ps)
        if (!(p > 0.0 && p <= 1.0))
            throw DomainError("pplot_points: p-values must lie in (0,1]");

    PPlotSeries series;
    series.m = ps.size();
    series.reference_slope = 1.0 / (static_cast<double>(series.m) + 1.0);
    std::vector<double> sorted(ps.begin(), ps.end());
    std::stable_sort(sorted.begin(), sorted.end());
    series.points.reserve(series.m);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        series.points.push_back({i + 1, sorted[i]});
    return series;
}

UniformityDiagnostics uniformity_diagnostics(const PPlotSeries& series) {
    if (series.m == 0) throw DomainError("uniformity_diagnostics: empty series");
    UniformityDiagnostics diag;

    double m = static_cast<double>(series.m);
    double d = 0.0;
    double sum_ip = 0.0;
    double sum_ii = 0.0;
    for (const auto& pt : series.points) {
        double i = static_cast<double>(pt.rank);
        d = std::max(d, i / m - pt.p);
        d = std::max(d, pt.p - (i - 1.0) / m);
        sum_ip += i * pt.p;
        sum_ii += i * i;
    }
    diag.ks_stat = d;
    diag.fitted_slope = sum_ip / sum_ii;
    if (series.m >= 5)
        diag.near_null = diag.ks_stat < 1.358 / std::sqrt(m);
    return diag;
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 50.0;
constexpr double kMarginRight = 15.0;
constexpr double kMarginTop = 15.0;
constexpr double kMarginBottom = 40.0;

std::string render_svg(const PPlotSeries& series, const std::string& metadata) {
    double plot_w = kWidth - kMarginLeft - kMarginRight;
    double plot_h = kHeight - kMarginTop - kMarginBottom;
    double x_max = static_cast<double>(series.m) + 1.0;
    auto px = [&](double rank) { return kMarginLeft + rank / x_max * plot_w; };
    auto py = [&](double p) { return kHeight - kMarginBottom - p * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\" "
           "width=\"640\" height=\"480\">\n";
    if (!metadata.empty()) svg += metadata;
    svg += "<rect x=\"" + fmt_fixed2(kMarginLeft) + "\" y=\"" + fmt_fixed2(kMarginTop) +
           "\" width=\"" + fmt_fixed2(plot_w) + "\" height=\"" + fmt_fixed2(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    // reference line through the origin with slope 1/(m+1)
    svg += "<line x1=\"" + fmt_fixed2(px(0.0)) + "\" y1=\"" + fmt_fixed2(py(0.0)) +
           "\" x2=\"" + fmt_fixed2(px(x_max)) + "\" y2=\"" + fmt_fixed2(py(1.0)) +
           "\" stroke=\"grey\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& pt : series.points) {
        svg += "<circle cx=\"" + fmt_fixed2(px(static_cast<double>(pt.rank))) + "\" cy=\"" +
               fmt_fixed2(py(pt.p)) + "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    svg += "<text x=\"" + fmt_fixed2(kMarginLeft + plot_w / 2.0) + "\" y=\"" +
           fmt_fixed2(kHeight - 10.0) + "\" text-anchor=\"middle\" font-size=\"14\">rank</text>\n";
    svg += "<text x=\"15\" y=\"" + fmt_fixed2(kMarginTop + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 " +
           fmt_fixed2(kMarginTop + plot_h / 2.0) + ")\">p-value</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace

std::string render(const PPlotSeries& series, PlotFormat format) {
    if (series.m == 0 || series.points.size() != series.m)
        throw DomainError("render: invalid series");
    switch (format) {
        case PlotFormat::csv: {
            std::string csv = "rank,p\n";
            for (const auto& pt : series.points)
                csv += std::to_string(pt.rank) + "," + fmt_sig10(pt.p) + "\n";
            return csv;
        }
        case PlotFormat::svg:
            return render_svg(series, "");
    }
    throw DomainError("render: unknown format");
}

std::string render_svg_with_diagnostics(const PPlotSeries& series,
                                        const UniformityDiagnostics& diag) {
    std::string meta = "<metadata>ks_stat=" + fmt_sig10(diag.ks_stat) +
                       " fitted_slope=" + fmt_sig10(diag.fitted_slope) + " near_null=" +
                       (diag.near_null ? (*diag.near_null ? "true" : "false") : "unavailable") +
                       "</metadata>\n";
    return render_svg(series, meta);
}

std::string tests_count_csv(const MetaRecord& meta) {
    std::string csv = "id,n_tests\n";
    for (const auto& s : meta.studies)
        csv += s.id + "," + std::to_string(s.n_tests) + "\n";
    return csv;
}

} // namespace metaaudit
