#pragma once

#include <string>
#include <vector>

namespace abclink::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double y_threshold = 0.0;  // draws a dashed guide line when set
    bool draw_threshold = false;
};

/// Static line chart; one polyline with point markers per series.
void write_line_chart(const std::string& path, const std::vector<Series>& series,
                      const ChartOptions& opt);

/// Static bar chart with one bar per label.
void write_bar_chart(const std::string& path, const std::vector<std::string>& labels,
                     const std::vector<double>& values, const ChartOptions& opt);

}  // namespace abclink::svg
