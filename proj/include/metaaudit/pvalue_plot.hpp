#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metaaudit/def_model.hpp"

namespace metaaudit {

// Sorted p-values against rank; near-linearity with slope 1/(m+1) is what a
// set of null tests should produce.
struct PPlotPoint {
    std::size_t rank = 0; // 1-based
    double p = 1.0;
};

struct PPlotSeries {
    std::vector<PPlotPoint> points; // ascending by p, stable for ties
    std::size_t m = 0;
    double reference_slope = 0.0; // 1/(m+1)
};

PPlotSeries pplot_points(std::span<const double> ps);

struct UniformityDiagnostics {
    double ks_stat = 0.0;
    double fitted_slope = 0.0;            // least squares through the origin
    std::optional<bool> near_null;        // unset when m < 5
};

UniformityDiagnostics uniformity_diagnostics(const PPlotSeries& series);

enum class PlotFormat { csv, svg };

// CSV: "rank,p" header, LF endings, p at up to 10 significant digits.
// SVG: self-contained, viewBox "0 0 640 480", one circle per point plus the
// reference line through the origin.
std::string render(const PPlotSeries& series, PlotFormat format);

// SVG with an embedded <metadata> block carrying the diagnostics.
std::string render_svg_with_diagnostics(const PPlotSeries& series,
                                        const UniformityDiagnostics& diag);

// Bar-data sidecar of reported test counts per bundled study: "id,n_tests".
std::string tests_count_csv(const MetaRecord& meta);

} // namespace metaaudit
