#include "citecorr/scatter_svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace citecorr {

namespace {

constexpr std::array<std::int64_t, 6> kTicks{0, 1, 10, 100, 1000, 10000};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // "-0.00" and "0.00" must render the same.
    if (std::string_view(buf) == "-0.00")
        return "0.00";
    return buf;
}

const char* grey(int shade)
{
    switch (shade) {
    case 1: return "#c0c0c0";
    case 2: return "#808080";
    case 3: return "#404040";
    default: return "#000000";
    }
}

// Smallest tick value whose ln(c+1) covers `ln_max`.
double axis_extent(double ln_max)
{
    for (std::int64_t t : kTicks)
        if (std::log(static_cast<double>(t) + 1.0) >= ln_max && t > 0)
            return std::log(static_cast<double>(t) + 1.0);
    return std::max(ln_max, std::log(10001.0));
}

// Liang-Barsky clip of y = a + b x to [0, xmax] x [0, ymax].
std::optional<std::array<double, 4>> clip_line(double a, double b, double xmax, double ymax)
{
    double x0 = 0, x1 = xmax;
    auto y_at = [&](double x) { return a + b * x; };
    if (b == 0) {
        if (a < 0 || a > ymax)
            return std::nullopt;
        return std::array<double, 4>{x0, a, x1, a};
    }
    double xa = (0 - a) / b, xb = (ymax - a) / b;
    double lo = std::max(x0, std::min(xa, xb));
    double hi = std::min(x1, std::max(xa, xb));
    if (lo >= hi)
        return std::nullopt;
    return std::array<double, 4>{lo, y_at(lo), hi, y_at(hi)};
}

} // namespace

std::string render_scatter(const CorrelationResult& result, const ScatterStyle& style)
{
    const double w = style.width, h = style.height, m = style.margin;
    const double pw = w - 2 * m, ph = h - 2 * m;
    const double bw = result.grid.bin_width;

    int max_i = 0, max_j = 0;
    for (const auto& [cell, count] : result.grid.cells) {
        max_i = std::max(max_i, cell.first);
        max_j = std::max(max_j, cell.second);
    }
    const double xmax = axis_extent((max_i + 1) * bw);
    const double ymax = axis_extent((max_j + 1) * bw);
    auto sx = [&](double v) { return m + v / xmax * pw; };
    auto sy = [&](double v) { return h - m - v / ymax * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\""
           + std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " "
           + std::to_string(style.height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"#ffffff\"/>\n";

    out += "<g class=\"cells\">\n";
    for (const auto& [cell, count] : result.grid.cells) {
        double x = sx(cell.first * bw), y = sy((cell.second + 1) * bw);
        double cw = sx((cell.first + 1) * bw) - x, ch = sy(cell.second * bw) - y;
        out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch)
               + "\" fill=\"" + grey(DensityGrid::shade(count)) + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g class=\"axes\" stroke=\"#000000\" fill=\"none\">\n";
    out += "<line x1=\"" + num(m) + "\" y1=\"" + num(h - m) + "\" x2=\"" + num(w - m) + "\" y2=\"" + num(h - m)
           + "\"/>\n";
    out += "<line x1=\"" + num(m) + "\" y1=\"" + num(m) + "\" x2=\"" + num(m) + "\" y2=\"" + num(h - m) + "\"/>\n";
    out += "</g>\n";

    out += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::int64_t t : kTicks) {
        double v = std::log(static_cast<double>(t) + 1.0);
        if (v <= xmax) {
            double x = sx(v);
            out += "<line x1=\"" + num(x) + "\" y1=\"" + num(h - m) + "\" x2=\"" + num(x) + "\" y2=\"" + num(h - m + 5)
                   + "\" stroke=\"#000000\"/>\n";
            out += "<text x=\"" + num(x) + "\" y=\"" + num(h - m + 18) + "\" text-anchor=\"middle\">"
                   + std::to_string(t) + "</text>\n";
        }
        if (v <= ymax) {
            double y = sy(v);
            out += "<line x1=\"" + num(m - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(m) + "\" y2=\"" + num(y)
                   + "\" stroke=\"#000000\"/>\n";
            out += "<text x=\"" + num(m - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + std::to_string(t)
                   + "</text>\n";
        }
    }
    out += "</g>\n";

    out += "<text x=\"" + num(m + pw / 2) + "\" y=\"" + num(h - 15)
           + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">ln(downloads + 1)</text>\n";
    out += "<text x=\"15\" y=\"" + num(m + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 15 " + num(m + ph / 2) + ")\">ln(citations + 1)</text>\n";

    if (result.fit && !result.grid.cells.empty()) {
        if (auto seg = clip_line(result.fit->intercept, result.fit->slope, xmax, ymax)) {
            const auto& s = *seg;
            out += "<line class=\"fit\" x1=\"" + num(sx(s[0])) + "\" y1=\"" + num(sy(s[1])) + "\" x2=\""
                   + num(sx(s[2])) + "\" y2=\"" + num(sy(s[3])) + "\" stroke=\"#d00000\" stroke-width=\"1.5\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace citecorr
