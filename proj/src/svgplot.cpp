#include "fortrend/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fortrend/dataset.hpp"

namespace fortrend {

namespace {

constexpr double kWidth = 800, kHeight = 560;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;

struct Scale {
    double lo = 0.0, hi = 1.0, px_lo = 0.0, px_hi = 1.0;
    double operator()(double v) const {
        if (hi == lo) return (px_lo + px_hi) / 2.0;
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string render_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<PlotSeries>& series) {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xlo = xhi = x;
                ylo = yhi = y;
                any = true;
            } else {
                xlo = std::min(xlo, x);
                xhi = std::max(xhi, x);
                ylo = std::min(ylo, y);
                yhi = std::max(yhi, y);
            }
        }
    if (any) { // 5% padding so boundary points stay visible
        double xpad = (xhi - xlo) * 0.05 + 1e-12, ypad = (yhi - ylo) * 0.05 + 1e-12;
        xlo -= xpad;
        xhi += xpad;
        ylo -= ypad;
        yhi += ypad;
    }
    Scale sx{xlo, xhi, kLeft, kWidth - kRight};
    Scale sy{ylo, yhi, kHeight - kBottom, kTop};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"" << kWidth << "\" height=\"" << kHeight << "\" "
        << "viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"17\">" << title
        << "</text>\n";

    // axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom
        << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        double fx = xlo + (xhi - xlo) * i / 5.0;
        double fy = ylo + (yhi - ylo) * i / 5.0;
        double px = sx(fx), py = sy(fy);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << kHeight - kBottom
            << "\" x2=\"" << num(px) << "\" y2=\"" << kHeight - kBottom + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << num(fx) << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py) << "\" x2=\""
            << kLeft << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << num(fy) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
        << kHeight - 15 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\">" << xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 18 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << ylabel << "</text>\n";

    for (const auto& s : series) {
        if (s.as_line) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"2\" points=\"";
            for (const auto& [x, y] : s.points)
                out << num(sx(x)) << ',' << num(sy(y)) << ' ';
            out << "\"/>\n";
        } else {
            for (const auto& [x, y] : s.points)
                out << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
                    << "\" r=\"3.5\" fill=\"" << s.color
                    << "\" fill-opacity=\"0.75\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string series_csv(const std::string& xname, const std::string& yname,
                       const std::vector<XY>& points) {
    std::ostringstream out;
    out << xname << ',' << yname << '\n';
    for (const auto& [x, y] : points)
        out << format_double(x) << ',' << format_double(y) << '\n';
    return out.str();
}

} // namespace fortrend
