#include "regforge/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "regforge/cli/io_error.hpp"

namespace regforge::cli {

namespace {

constexpr double      kWidth  = 800.0;
constexpr double      kHeight = 480.0;
constexpr double      kLeft   = 70.0;
constexpr double      kRight  = 20.0;
constexpr double      kTop    = 40.0;
constexpr double      kBottom = 50.0;
constexpr std::size_t kMaxPoints = 1500;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
double tick_step(double span, int target) {
    const double raw  = span / target;
    const double mag  = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double nice = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return nice * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

}  // namespace

std::string render_svg(const LinePlot& plot) {
    Range xr, yr;
    for (const auto& s : plot.series) {
        for (double v : s.x) xr.include(v);
        if (!plot.fixed_y) {
            for (double v : s.y) yr.include(v);
        }
    }
    if (plot.fixed_y) {
        yr.lo = plot.y_min;
        yr.hi = plot.y_max;
    }
    xr.finish();
    yr.finish();
    if (!plot.fixed_y) {
        const double pad = 0.05 * (yr.hi - yr.lo);
        yr.lo -= pad;
        yr.hi += pad;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto         sx     = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto         sy     = [&](double y) {
        const double c = std::clamp(y, yr.lo, yr.hi);
        return kTop + (yr.hi - c) / (yr.hi - yr.lo) * plot_h;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << px(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title)
       << "</text>\n";

    // Grid and ticks.
    const double xs = tick_step(xr.hi - xr.lo, 8);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
        os << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(sx(t)) << "\" y2=\""
           << px(kTop + plot_h) << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(kTop + plot_h + 16) << "\" text-anchor=\"middle\">"
           << num(std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
    }
    const double ys = tick_step(yr.hi - yr.lo, 6);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
        os << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(kLeft + plot_w) << "\" y2=\""
           << px(sy(t)) << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(sy(t) + 4) << "\" text-anchor=\"end\">"
           << num(std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
    }
    os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(plot_w) << "\" height=\""
       << px(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(kLeft + plot_w / 2) << "\" y=\"" << px(kHeight - 10) << "\" text-anchor=\"middle\">"
       << escape(plot.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << px(kTop + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(plot.y_label) << "</text>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto&       s      = plot.series[i];
        const char*       color  = kPalette[i % std::size(kPalette)];
        const std::size_t n      = std::min(s.x.size(), s.y.size());
        const std::size_t stride = std::max<std::size_t>(1, (n + kMaxPoints - 1) / kMaxPoints);
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < n; k += stride) {
            if (!std::isfinite(s.y[k])) break;
            os << px(sx(s.x[k])) << ',' << px(sy(s.y[k])) << ' ';
        }
        if (n > 0 && (n - 1) % stride != 0 && std::isfinite(s.y[n - 1])) {
            os << px(sx(s.x[n - 1])) << ',' << px(sy(s.y[n - 1]));
        }
        os << "\"/>\n";

        const double ly = kTop + 14 + 16 * static_cast<double>(i);
        const double lx = kLeft + plot_w - 200;
        os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 24) << "\" y2=\""
           << px(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg_file(const std::string& path, const LinePlot& plot) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << render_svg(plot);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

}  // namespace regforge::cli
