#include "cfgn/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace cfgn {

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

std::string tick(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 3);
    return std::string(buf, res.ptr);
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-300) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series, const std::string& comment) {
    const double left = 70, right = 150, top = 40, bottom = 50;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;
    auto tx = [&](double v) { return spec.log_log ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_log || (x > 0.0 && y > 0.0));
    };

    Range rx, ry;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            rx.add(tx(s.x[i]));
            ry.add(tx(s.y[i]));
        }
    }
    rx.finish();
    ry.finish();
    auto px = [&](double v) { return left + (tx(v) - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double v) { return top + ph - (tx(v) - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!comment.empty()) out += "<!-- " + comment + " -->\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\""
         + std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
         + escape(spec.title) + "</text>\n";
    out += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" + fixed(ph)
         + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = rx.lo + (rx.hi - rx.lo) * k / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * k / 4.0;
        const double gx = left + pw * k / 4.0;
        const double gy = top + ph - ph * k / 4.0;
        const double lx = spec.log_log ? std::pow(10.0, fx) : fx;
        const double ly = spec.log_log ? std::pow(10.0, fy) : fy;
        out += "<line x1=\"" + fixed(gx) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(gx) + "\" y2=\""
             + fixed(top + ph) + "\" stroke=\"#ddd\"/>\n";
        out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(gy) + "\" x2=\"" + fixed(left + pw) + "\" y2=\""
             + fixed(gy) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fixed(gx) + "\" y=\"" + fixed(top + ph + 15) + "\" text-anchor=\"middle\">" + tick(lx)
             + "</text>\n";
        out += "<text x=\"" + fixed(left - 5) + "\" y=\"" + fixed(gy + 4) + "\" text-anchor=\"end\">" + tick(ly)
             + "</text>\n";
    }
    out += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(spec.height - 10.0)
         + "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
    out += "<text x=\"15\" y=\"" + fixed(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
         + fixed(top + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

    double legend_y = top + 10;
    for (const auto& s : series) {
        std::string pts;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            pts += fixed(px(s.x[i])) + ',' + fixed(py(s.y[i])) + ' ';
        }
        const std::string dash = s.dashed ? " stroke-dasharray=\"5,3\"" : "";
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" + dash + " points=\"" + pts
             + "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
                if (!usable(s.x[i], s.y[i])) continue;
                out += "<circle cx=\"" + fixed(px(s.x[i])) + "\" cy=\"" + fixed(py(s.y[i])) + "\" r=\"2\" fill=\""
                     + s.color + "\"/>\n";
            }
        }
        const double lx = left + pw + 10;
        out += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(legend_y) + "\" x2=\"" + fixed(lx + 20) + "\" y2=\""
             + fixed(legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" + dash + "/>\n";
        out += "<text x=\"" + fixed(lx + 25) + "\" y=\"" + fixed(legend_y + 4) + "\">" + escape(s.label) + "</text>\n";
        legend_y += 16;
    }
    out += "</svg>\n";
    return out;
}

} // namespace cfgn
