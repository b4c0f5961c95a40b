#include "ifalab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifalab/io.hpp"

namespace ifalab::svg {

namespace {

constexpr double plot_width = 800;
constexpr double panel_height = 240;
constexpr double margin = 40;

struct Bounds {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;

    void add(std::span<const double> y) {
        for (double v : y) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        count = std::max(count, y.size());
    }
    void finish() {
        if (!(lo <= hi)) lo = hi = 0;
        if (lo == hi) {
            lo -= 1;
            hi += 1;
        }
    }
};

std::string num(double v) {
    // Two decimals keep files small and diff-able.
    return format_double(std::round(v * 100) / 100);
}

std::string header(double height, std::string_view title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(plot_width + 2 * margin) +
                      "\" height=\"" + num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(margin) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
           std::string(title) + "</text>\n";
    return out;
}

std::string frame(double top, double height, const Bounds& b) {
    std::string out = "<rect x=\"" + num(margin) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_width) +
                      "\" height=\"" + num(height) + "\" fill=\"none\" stroke=\"#888\"/>\n";
    out += "<text x=\"2\" y=\"" + num(top + 10) + "\" font-size=\"9\">" + format_double(b.hi) + "</text>\n";
    out += "<text x=\"2\" y=\"" + num(top + height) + "\" font-size=\"9\">" + format_double(b.lo) + "</text>\n";
    return out;
}

struct Mapper {
    Bounds b;
    double top;
    double height;

    double x(std::size_t i) const {
        const double span = b.count > 1 ? static_cast<double>(b.count - 1) : 1.0;
        return margin + plot_width * static_cast<double>(i) / span;
    }
    double y(double v) const { return top + height * (b.hi - v) / (b.hi - b.lo); }
};

std::string polyline(const Series& s, const Mapper& m) {
    std::string out = "<polyline fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        out += num(m.x(i)) + "," + num(m.y(s.y[i])) + " ";
    }
    out += "\"/>\n";
    return out;
}

std::string legend(std::span<const Series> series, double top) {
    std::string out;
    double x = margin;
    for (const auto& s : series) {
        out += "<text x=\"" + num(x) + "\" y=\"" + num(top) + "\" font-size=\"11\" fill=\"" + s.colour + "\">" +
               s.name + "</text>\n";
        x += 12.0 * static_cast<double>(s.name.size()) + 20;
    }
    return out;
}

}  // namespace

std::string scatter(std::string_view title, std::span<const Series> series) {
    Bounds b;
    for (const auto& s : series) b.add(s.y);
    b.finish();
    const double top = margin;
    const Mapper m{b, top, panel_height};
    std::string out = header(top + panel_height + margin, title) + frame(top, panel_height, b);
    for (const auto& s : series) {
        out += "<g fill=\"" + s.colour + "\" fill-opacity=\"0.6\">\n";
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            out += "<circle cx=\"" + num(m.x(i)) + "\" cy=\"" + num(m.y(s.y[i])) + "\" r=\"1.2\"/>\n";
        }
        out += "</g>\n";
    }
    out += legend(series, top + panel_height + 25);
    return out + "</svg>\n";
}

std::string lines(std::string_view title, std::span<const Series> series) {
    Bounds b;
    for (const auto& s : series) b.add(s.y);
    b.finish();
    const double top = margin;
    const Mapper m{b, top, panel_height};
    std::string out = header(top + panel_height + margin, title) + frame(top, panel_height, b);
    for (const auto& s : series) out += polyline(s, m);
    out += legend(series, top + panel_height + 25);
    return out + "</svg>\n";
}

std::string panels(std::string_view title, std::span<const Series> series) {
    const double gap = 30;
    std::string out = header(margin + static_cast<double>(series.size()) * (panel_height / 2 + gap) + margin, title);
    double top = margin;
    for (const auto& s : series) {
        Bounds b;
        b.add(s.y);
        b.finish();
        const Mapper m{b, top, panel_height / 2};
        out += frame(top, panel_height / 2, b);
        out += polyline(s, m);
        out += "<text x=\"" + num(margin + 4) + "\" y=\"" + num(top + 12) + "\" font-size=\"11\">" + s.name +
               "</text>\n";
        top += panel_height / 2 + gap;
    }
    return out + "</svg>\n";
}

std::string raster(std::string_view title, const CaGrid& grid) {
    const double cell = std::max(1.0, std::floor(plot_width / static_cast<double>(grid.width)));
    const double height = margin + cell * static_cast<double>(grid.steps) + 10;
    std::string out = header(height, title);
    out += "<g fill=\"black\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t r = 0; r < grid.steps; ++r) {
        const auto row = grid.row(r);
        for (std::size_t c = 0; c < grid.width; ++c) {
            if (!row[c]) continue;
            out += "<rect x=\"" + num(margin + cell * static_cast<double>(c)) + "\" y=\"" +
                   num(margin + cell * static_cast<double>(r)) + "\" width=\"" + num(cell) + "\" height=\"" +
                   num(cell) + "\"/>\n";
        }
    }
    return out + "</g>\n</svg>\n";
}

}  // namespace ifalab::svg
