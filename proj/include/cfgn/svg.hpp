#pragma once

#include <span>
#include <string>
#include <vector>

namespace cfgn {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_log = false; // non-positive points are dropped
    int width = 640;
    int height = 420;
};

/// Minimal SVG line plot. `comment` is embedded verbatim as an XML comment.
[[nodiscard]] std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series,
                                     const std::string& comment = {});

} // namespace cfgn
