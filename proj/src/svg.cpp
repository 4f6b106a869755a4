#include "gasket/svg.hpp"

#include "gasket/cells.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gasket {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#d1495b", "#00798c", "#edae49", "#66a182", "#2e4057", "#8d96a3"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Frame {
    double scale;
    double half_width;
    double height;
    double margin;

    std::string point(const Point& p) const {
        return num(margin + (p.x + half_width) * scale) + "," + num(margin + (height - p.y) * scale);
    }
};

std::string polygon(const Frame& f, const Cell& c, const std::string& attrs) {
    std::string pts;
    for (const Vertex& v : c.corners()) {
        if (!pts.empty()) pts += ' ';
        pts += f.point(planar(v, c.scale));
    }
    return "<polygon points=\"" + pts + "\" " + attrs + "/>\n";
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

}  // namespace

std::string render_svg(const GasketLevel& ctx, const std::vector<SvgLayer>& layers, const SvgStyle& style) {
    for (const SvgLayer& l : layers)
        if (l.members.size() != ctx.size()) throw std::invalid_argument("layer '" + l.label + "' is for another level");

    const int n = ctx.level();
    const int L = ctx.domain_L();
    const double side = std::ldexp(1.0, L);
    const double legend_rows = static_cast<double>(layers.size() + 1);
    Frame f{0, side, side * std::sqrt(3.0) / 2, 10};
    f.scale = (style.width - 2 * f.margin) / (2 * side);
    const double plot_h = f.height * f.scale + 2 * f.margin;
    const double total_h = plot_h + 18 * legend_rows + 10;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(style.width) + "\" height=\"" + num(total_h) +
           "\" viewBox=\"0 0 " + num(style.width) + " " + num(total_h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    out += "<g id=\"wireframe\" fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"0.5\">\n";
    for (const Cell& c : cells_in_tr(std::min(style.wire_scale, n), L)) out += polygon(f, c, "");
    out += "</g>\n";

    for (std::size_t i = 0; i < layers.size(); ++i) {
        const char* colour = kPalette[i % kPalette.size()];
        out += "<g id=\"layer" + std::to_string(i) + "\" fill=\"" + colour +
               "\" fill-opacity=\"0.45\" stroke=\"none\">\n";
        for (const Cell& c : cells_of(layers[i].members, ctx, n)) out += polygon(f, c, "");
        out += "</g>\n";
        if (style.mark_vertices) {
            out += "<g id=\"marks" + std::to_string(i) + "\" fill=\"" + colour + "\">\n";
            const double r = std::max(0.6, std::min(3.0, 0.25 * f.scale * std::ldexp(1.0, -n)));
            for (std::size_t x = 0; x < ctx.size(); ++x) {
                if (!layers[i].members[x]) continue;
                const Point p = planar(ctx.vertex(x), n);
                out += "<circle cx=\"" + num(f.margin + (p.x + f.half_width) * f.scale) + "\" cy=\"" +
                       num(f.margin + (f.height - p.y) * f.scale) + "\" r=\"" + num(r) + "\"/>\n";
            }
            out += "</g>\n";
        }
    }

    // Outline of Tr: the two corner triangles of B(0, 2^L).
    out += "<g id=\"outline\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\">\n";
    for (Half h : {Half::Plus, Half::Minus}) out += polygon(f, Cell{-L, h, 0, 0}, "");
    out += "</g>\n";

    out += "<g id=\"legend\" font-family=\"monospace\" font-size=\"12\">\n";
    double y = plot_h + 14;
    out += "<text x=\"10\" y=\"" + num(y) + "\">level " + std::to_string(n) + ", Tr = B(0," +
           std::to_string(1L << L) + "), " + std::to_string(ctx.size()) + " vertices</text>\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
        y += 18;
        const auto count = std::count(layers[i].members.begin(), layers[i].members.end(), 1);
        char measure[64];
        std::snprintf(measure, sizeof measure, "%.6g", static_cast<double>(count) * std::pow(3.0, -n));
        out += "<rect x=\"10\" y=\"" + num(y - 10) + "\" width=\"12\" height=\"12\" fill=\"" +
               kPalette[i % kPalette.size()] + "\" fill-opacity=\"0.45\"/>\n";
        out += "<text x=\"28\" y=\"" + num(y) + "\">" + escape(layers[i].label) + ": " + std::to_string(count) +
               " vertices, 3^-n count " + measure + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace gasket
