#include "torus/svg.hpp"

#include "torus/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torus::svg {

namespace {

struct Viewport {
    double minx = 0, miny = 0, maxx = 1, maxy = 1;
    double width = 1000.0;

    double scale() const { return width / std::max(maxx - minx, 1e-12); }
    double height() const { return (maxy - miny) * scale(); }
    double sx(double x) const { return (x - minx) * scale(); }
    double sy(double y) const { return (maxy - y) * scale(); }  // flip y

    void include(const geom::Vec2& p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    void inflate(double f) {
        const double dx = (maxx - minx) * f, dy = (maxy - miny) * f;
        minx -= dx;
        maxx += dx;
        miny -= dy;
        maxy += dy;
    }
};

Viewport viewport_of(const std::vector<geom::Vec2>& pts) {
    Viewport vp;
    if (!pts.empty()) {
        vp.minx = vp.maxx = pts[0].x;
        vp.miny = vp.maxy = pts[0].y;
        for (const geom::Vec2& p : pts) vp.include(p);
    }
    vp.inflate(0.05);
    return vp;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void open_doc(std::ostringstream& out, const Viewport& vp, int legend_lines) {
    const double total = vp.height() + 18.0 * (legend_lines + 2);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(vp.width) << "\" height=\""
        << num(total) << "\" viewBox=\"0 0 " << num(vp.width) << " " << num(total) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void polygon_path(std::ostringstream& out, const Viewport& vp, const geom::ConvexPolygon& poly,
                  const std::string& stroke, double opacity, bool dashed = false) {
    if (poly.vertices.empty()) return;
    if (poly.vertices.size() == 1) {
        const geom::Vec2& p = poly.vertices[0];
        out << "<circle cx=\"" << num(vp.sx(p.x)) << "\" cy=\"" << num(vp.sy(p.y))
            << "\" r=\"4\" fill=\"" << stroke << "\" fill-opacity=\"" << num(opacity) << "\"/>\n";
        return;
    }
    out << "<path d=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const geom::Vec2& p = poly.vertices[i];
        out << (i == 0 ? "M" : "L") << num(vp.sx(p.x)) << "," << num(vp.sy(p.y));
    }
    out << "Z\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" stroke-opacity=\""
        << num(opacity) << "\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << "/>\n";
}

void cloud_group(std::ostringstream& out, const Viewport& vp, const geom::PointCloud& cloud,
                 const std::string& fill, double opacity, std::size_t cap = 4000) {
    const std::size_t stride = std::max<std::size_t>(1, cloud.size() / cap);
    out << "<g fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\">\n";
    for (std::size_t i = 0; i < cloud.size(); i += stride) {
        const geom::Vec2& p = cloud.pts[i];
        out << "<circle cx=\"" << num(vp.sx(p.x)) << "\" cy=\"" << num(vp.sy(p.y))
            << "\" r=\"1.2\"/>\n";
    }
    out << "</g>\n";
}

void legend_line(std::ostringstream& out, int slot, const std::string& text) {
    out << "<text x=\"12\" y=\"" << num(18.0 * (slot + 1))
        << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#222\">" << text << "</text>\n";
}

}  // namespace

void render_trace(const spreader::StageTrace& trace, const std::filesystem::path& path) {
    if (trace.rows.empty()) throw std::invalid_argument("render_trace: empty trace");
    Viewport vp = viewport_of(trace.rows.back().cloud.pts);
    for (const geom::Vec2& p : trace.rows.back().k_poly.vertices) vp.include(p);
    vp.inflate(0.05);

    std::ostringstream out;
    const std::size_t n = trace.rows.size();
    open_doc(out, vp, static_cast<int>(n) + 1);
    out << "<g id=\"d-clouds\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double opacity = 0.15 + 0.75 * (static_cast<double>(i) / std::max<std::size_t>(1, n - 1));
        cloud_group(out, vp, trace.rows[i].cloud, "#1f5fa8", opacity * 0.5);
    }
    out << "</g>\n<g id=\"k-polygons\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double opacity = 0.25 + 0.75 * (static_cast<double>(i) / std::max<std::size_t>(1, n - 1));
        polygon_path(out, vp, trace.rows[i].k_poly, "#c0392b", opacity);
    }
    out << "</g>\n<g id=\"legend\" transform=\"translate(0," << num(vp.height() + 6.0) << ")\">\n";
    int slot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::ostringstream line;
        line << "K" << trace.rows[i].k_index << " / D" << trace.rows[i].k_index << ": D-&gt;K "
             << serialize::real_str(trace.rows[i].d_to_k) << "  K-&gt;D "
             << serialize::real_str(trace.rows[i].k_to_d);
        legend_line(out, slot++, line.str());
    }
    {
        std::ostringstream line;
        line << "final d_H " << serialize::real_str(trace.final_hausdorff) << " (slack "
             << serialize::real_str(trace.final_slack) << ")";
        legend_line(out, slot++, line.str());
    }
    out << "</g>\n</svg>\n";
    serialize::atomic_write(path, out.str());
}

namespace {

void render_polygons(const std::vector<geom::ConvexPolygon>& polys,
                     const std::optional<geom::ConvexPolygon>& target,
                     const std::filesystem::path& path) {
    if (polys.empty()) throw std::invalid_argument("render_hull_series: empty estimate list");
    std::vector<geom::Vec2> all;
    for (const auto& poly : polys)
        all.insert(all.end(), poly.vertices.begin(), poly.vertices.end());
    if (target)
        all.insert(all.end(), target->vertices.begin(), target->vertices.end());
    Viewport vp = viewport_of(all);

    std::ostringstream out;
    open_doc(out, vp, 2);
    out << "<g id=\"hulls\">\n";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const double opacity =
            0.25 + 0.75 * (static_cast<double>(i) / std::max<std::size_t>(1, polys.size() - 1));
        polygon_path(out, vp, polys[i], "#1f5fa8", opacity);
    }
    if (target) polygon_path(out, vp, *target, "#c0392b", 0.9, true);
    out << "</g>\n<g id=\"legend\" transform=\"translate(0," << num(vp.height() + 6.0) << ")\">\n";
    legend_line(out, 0, "hull series (light to dark)");
    if (target) legend_line(out, 1, "dashed: target");
    out << "</g>\n</svg>\n";
    serialize::atomic_write(path, out.str());
}

}  // namespace

void render_hull_series(const std::vector<rotation::RotationEstimate>& estimates,
                        const std::filesystem::path& path,
                        const std::optional<geom::ConvexPolygon>& target) {
    std::vector<geom::ConvexPolygon> polys;
    polys.reserve(estimates.size());
    for (const auto& est : estimates) polys.push_back(est.hull);
    render_polygons(polys, target, path);
}

void render_hull_series(const rotation::GeneralizedRotEstimate& estimate,
                        const std::filesystem::path& path,
                        const std::optional<geom::ConvexPolygon>& target) {
    std::vector<geom::ConvexPolygon> polys;
    polys.reserve(estimate.normalized.size());
    for (const auto& cloud : estimate.normalized) polys.push_back(geom::convex_hull(cloud.pts));
    render_polygons(polys, target, path);
}

}  // namespace torus::svg
