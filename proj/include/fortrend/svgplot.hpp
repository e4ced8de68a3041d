#ifndef FORTREND_SVGPLOT_HPP
#define FORTREND_SVGPLOT_HPP

#include <string>
#include <utility>
#include <vector>

namespace fortrend {

using XY = std::pair<double, double>;

struct PlotSeries {
    std::vector<XY> points;
    bool as_line = false; // polyline instead of circle markers
    std::string color = "#1f6fb4";
    std::string label;
};

/// Static SVG 1.1 scatter/line chart. An empty point set still yields a
/// valid chart with axes.
std::string render_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<PlotSeries>& series);

/// CSV dump of one series: <xname>,<yname> header then one row per point at
/// full precision, so plot correctness is testable without image parsing.
std::string series_csv(const std::string& xname, const std::string& yname,
                       const std::vector<XY>& points);

} // namespace fortrend

#endif
