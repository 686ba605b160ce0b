#include "wellsep/figure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wellsep/error.hpp"
#include "wellsep/evaluation.hpp"
#include "wellsep/io.hpp"

namespace wellsep {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

enum class Marker { Circle, Square, Triangle, Diamond };
constexpr std::array<Marker, 4> kMarkers = {Marker::Circle, Marker::Square, Marker::Triangle,
                                            Marker::Diamond};

constexpr double kCanvas = 800.0;
constexpr double kMargin = 30.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double min_x, max_y, scale, width, height;
    double x(double v) const { return kMargin + (v - min_x) * scale; }
    double y(double v) const { return kMargin + (max_y - v) * scale; }
};

void marker(std::string& out, Marker m, double cx, double cy, const char* color, double opacity) {
    const double s = 2.5;
    const std::string style = std::string(" fill=\"") + color + "\" fill-opacity=\"" + fmt(opacity) + "\"/>\n";
    switch (m) {
        case Marker::Circle:
            out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(s) + "\"" + style;
            break;
        case Marker::Square:
            out += "<rect x=\"" + fmt(cx - s) + "\" y=\"" + fmt(cy - s) + "\" width=\"" + fmt(2 * s) +
                   "\" height=\"" + fmt(2 * s) + "\"" + style;
            break;
        case Marker::Triangle:
            out += "<polygon points=\"" + fmt(cx) + "," + fmt(cy - s * 1.2) + " " + fmt(cx - s) + "," +
                   fmt(cy + s) + " " + fmt(cx + s) + "," + fmt(cy + s) + "\"" + style;
            break;
        case Marker::Diamond:
            out += "<polygon points=\"" + fmt(cx) + "," + fmt(cy - s * 1.3) + " " + fmt(cx + s) + "," +
                   fmt(cy) + " " + fmt(cx) + "," + fmt(cy + s * 1.3) + " " + fmt(cx - s) + "," + fmt(cy) +
                   "\"" + style;
            break;
    }
}

}  // namespace

std::vector<ErrorCircle> error_circles(const LabeledDataset& ld, const Clustering& clustering) {
    const auto erroneous = erroneous_found_clusters(ld, clustering);
    const auto& d = ld.dataset;
    std::vector<ErrorCircle> circles;
    for (std::size_t f = 0; f < clustering.k; ++f) {
        if (!erroneous[f]) continue;
        std::vector<std::size_t> regular, all;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (clustering.assignment[i] != f) continue;
            all.push_back(i);
            if (!ld.is_noise(i)) regular.push_back(i);
        }
        if (all.empty()) continue;
        ErrorCircle c;
        c.found_cluster = f;
        c.center = centroid(d, all);
        double r2 = 0.0;
        for (const auto i : regular.empty() ? all : regular) r2 = std::max(r2, squared_distance(d[i], c.center));
        const double pad = ld.config ? 0.15 * ld.config->radius : 0.0;
        c.radius = std::sqrt(r2) + pad;
        circles.push_back(std::move(c));
    }
    return circles;
}

std::string render_svg(const LabeledDataset& ld, const Clustering& clustering, const std::string& title) {
    const auto& d = ld.dataset;
    if (d.dim() != 2) throw UsageError("figures need two-dimensional data");
    if (clustering.assignment.size() != d.size()) throw UsageError("clustering does not cover the dataset");
    const auto circles = error_circles(ld, clustering);

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    auto extend = [&](double x, double y, double r) {
        min_x = std::min(min_x, x - r);
        max_x = std::max(max_x, x + r);
        min_y = std::min(min_y, y - r);
        max_y = std::max(max_y, y + r);
    };
    for (std::size_t i = 0; i < d.size(); ++i) extend(d[i][0], d[i][1], 0.0);
    for (const auto& c : circles) extend(c.center[0], c.center[1], c.radius);
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double scale = (kCanvas - 2 * kMargin) / span;
    const Frame frame{min_x, max_y, scale, (max_x - min_x) * scale + 2 * kMargin,
                      (max_y - min_y) * scale + 2 * kMargin + 20.0};

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(frame.width) +
           "\" height=\"" + fmt(frame.height) + "\" viewBox=\"0 0 " + fmt(frame.width) + " " +
           fmt(frame.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(frame.height - 6.0) +
               "\" font-family=\"sans-serif\" font-size=\"14\">" + escape_xml(title) + "</text>\n";
    }
    out += "<g id=\"points\">\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto f = clustering.assignment[i];
        marker(out, kMarkers[(f / kPalette.size()) % kMarkers.size()], frame.x(d[i][0]), frame.y(d[i][1]),
               kPalette[f % kPalette.size()], ld.is_noise(i) ? 0.35 : 0.9);
    }
    out += "</g>\n<g id=\"errors\" fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
    for (const auto& c : circles) {
        out += "<circle cx=\"" + fmt(frame.x(c.center[0])) + "\" cy=\"" + fmt(frame.y(c.center[1])) +
               "\" r=\"" + fmt(c.radius * scale) + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::vector<ErrorCircle> render_worst_case(const LabeledDataset& ld, const Clustering& clustering,
                                           const std::filesystem::path& out_path, const std::string& title) {
    write_text(out_path, render_svg(ld, clustering, title));
    return error_circles(ld, clustering);
}

}  // namespace wellsep
