#include "abclink/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "abclink/errors.hpp"

namespace abclink::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;
const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a9d6c", "#8f6fc9", "#c98a2d", "#4f4f4f"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0;
            hi = 1;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

double map_x(double v, const Range& r) { return kLeft + (v - r.lo) / (r.hi - r.lo) * kPlotW; }
double map_y(double v, const Range& r) {
    return kTop + kPlotH - (v - r.lo) / (r.hi - r.lo) * kPlotH;
}

void emit_frame(std::ofstream& f, const ChartOptions& opt, const Range& xr, const Range& yr,
                bool log_y) {
    f << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kPlotW << "' height='"
      << kPlotH << "' fill='none' stroke='#333'/>\n";
    f << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15'>"
      << opt.title << "</text>\n";
    f << "<text x='" << kLeft + kPlotW / 2 << "' y='" << kHeight - 12
      << "' text-anchor='middle' font-size='12'>" << opt.x_label << "</text>\n";
    f << "<text x='16' y='" << kTop + kPlotH / 2
      << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
      << kTop + kPlotH / 2 << ")'>" << opt.y_label << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double px = map_x(fx, xr);
        f << "<line x1='" << px << "' y1='" << kTop + kPlotH << "' x2='" << px << "' y2='"
          << kTop + kPlotH + 5 << "' stroke='#333'/>\n";
        f << "<text x='" << px << "' y='" << kTop + kPlotH + 18
          << "' text-anchor='middle' font-size='10'>" << num(fx) << "</text>\n";

        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double py = map_y(fy, yr);
        f << "<line x1='" << kLeft - 5 << "' y1='" << py << "' x2='" << kLeft << "' y2='" << py
          << "' stroke='#333'/>\n";
        f << "<text x='" << kLeft - 8 << "' y='" << py + 3
          << "' text-anchor='end' font-size='10'>" << num(log_y ? std::pow(10.0, fy) : fy)
          << "</text>\n";
    }
}

}  // namespace

void write_line_chart(const std::string& path, const std::vector<Series>& series,
                      const ChartOptions& opt) {
    std::ofstream f(path);
    if (!f) throw Error("svg: cannot open " + path + " for writing");

    auto ty = [&](double v) {
        return opt.log_y ? std::log10(std::max(v, 1e-300)) : v;
    };
    Range xr, yr;
    for (const Series& s : series) {
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(ty(v));
    }
    if (opt.draw_threshold) yr.include(ty(opt.y_threshold));
    xr.pad();
    yr.pad();

    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' font-family='sans-serif'>\n";
    emit_frame(f, opt, xr, yr, opt.log_y);

    if (opt.draw_threshold) {
        const double py = map_y(ty(opt.y_threshold), yr);
        f << "<line x1='" << kLeft << "' y1='" << py << "' x2='" << kLeft + kPlotW << "' y2='"
          << py << "' stroke='#999' stroke-dasharray='6 4'/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % 6];
        f << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            f << num(map_x(s.x[i], xr)) << ',' << num(map_y(ty(s.y[i]), yr)) << ' ';
        }
        f << "'/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            f << "<circle cx='" << num(map_x(s.x[i], xr)) << "' cy='"
              << num(map_y(ty(s.y[i]), yr)) << "' r='3' fill='" << color << "'/>\n";
        }
        if (!s.label.empty()) {
            f << "<text x='" << kLeft + kPlotW - 6 << "' y='" << kTop + 16 + 14 * static_cast<double>(si)
              << "' text-anchor='end' font-size='11' fill='" << color << "'>" << s.label
              << "</text>\n";
        }
    }
    f << "</svg>\n";
}

void write_bar_chart(const std::string& path, const std::vector<std::string>& labels,
                     const std::vector<double>& values, const ChartOptions& opt) {
    std::ofstream f(path);
    if (!f) throw Error("svg: cannot open " + path + " for writing");

    Range yr;
    yr.include(0.0);
    for (double v : values) yr.include(v);
    if (opt.draw_threshold) yr.include(opt.y_threshold);
    yr.pad();
    Range xr{0.0, static_cast<double>(values.size())};

    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' font-family='sans-serif'>\n";
    emit_frame(f, opt, xr, yr, false);

    const double slot = kPlotW / std::max<std::size_t>(1, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = kLeft + slot * (static_cast<double>(i) + 0.15);
        const double y = map_y(values[i], yr);
        const double y0 = map_y(std::max(0.0, yr.lo), yr);
        f << "<rect x='" << num(x) << "' y='" << num(std::min(y, y0)) << "' width='"
          << num(slot * 0.7) << "' height='" << num(std::fabs(y0 - y))
          << "' fill='#1f6fb2'/>\n";
        if (i < labels.size()) {
            f << "<text x='" << num(x + slot * 0.35) << "' y='" << kTop + kPlotH + 18
              << "' text-anchor='middle' font-size='10'>" << labels[i] << "</text>\n";
        }
    }
    if (opt.draw_threshold) {
        const double py = map_y(opt.y_threshold, yr);
        f << "<line x1='" << kLeft << "' y1='" << py << "' x2='" << kLeft + kPlotW << "' y2='"
          << py << "' stroke='#d1495b' stroke-dasharray='6 4'/>\n";
    }
    f << "</svg>\n";
}

}  // namespace abclink::svg
