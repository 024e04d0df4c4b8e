#include "torus/geom.hpp"

#include "torus/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace torus::geom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double dist_point_segment(const Vec2& v, const Vec2& p, const Vec2& q) {
    const Vec2 d = q - p;
    const double len_sq = d.norm_sq();
    if (len_sq == 0.0) return dist(v, p);
    double t = (v - p).dot(d) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return dist(v, p + d * t);
}

Vec2 PointCloud::centroid() const {
    double sx = 0, sy = 0;
    for (const Vec2& p : pts) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(pts.size());
    return {sx / n, sy / n};
}

PointCloud PointCloud::translated(const Vec2& t) const {
    PointCloud out = *this;
    for (Vec2& p : out.pts) p = p + t;
    return out;
}

// ---------------------------------------------------------------------------
// Nearest-neighbor grid

NearestNeighborGrid::NearestNeighborGrid(const std::vector<Vec2>& pts) {
    if (pts.empty()) throw std::invalid_argument("NearestNeighborGrid: empty cloud");
    double maxx = -kInf, maxy = -kInf;
    minx_ = kInf;
    miny_ = kInf;
    for (const Vec2& p : pts) {
        minx_ = std::min(minx_, p.x);
        miny_ = std::min(miny_, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
    }
    const double w = maxx - minx_;
    const double h = maxy - miny_;
    const double n = static_cast<double>(pts.size());
    // cap the side counts near 4 sqrt(n) so thin clouds keep sane rings
    const double side_cap = 4.0 * std::sqrt(n) + 1.0;
    double cell = std::sqrt(std::max(w * h, 1e-300) / n);
    cell = std::max({cell, w / side_cap, h / side_cap});
    if (cell <= 0 || !std::isfinite(cell)) cell = 1.0;
    cell_ = cell;
    nx_ = std::max(1, static_cast<int>(w / cell_) + 1);
    ny_ = std::max(1, static_cast<int>(h / cell_) + 1);

    // counting sort into cells
    std::vector<std::size_t> counts(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    auto cell_of = [&](const Vec2& p) {
        int ix = std::min(nx_ - 1, std::max(0, static_cast<int>((p.x - minx_) / cell_)));
        int iy = std::min(ny_ - 1, std::max(0, static_cast<int>((p.y - miny_) / cell_)));
        return cell_index(ix, iy);
    };
    for (const Vec2& p : pts) counts[cell_of(p) + 1]++;
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    cell_start_ = counts;
    pts_.resize(pts.size());
    std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
    for (const Vec2& p : pts) pts_[cursor[cell_of(p)]++] = p;
}

double NearestNeighborGrid::nearest_dist(const Vec2& q) const {
    bool no_self = false;
    return search(q, no_self);
}

double NearestNeighborGrid::nearest_other_dist(const Vec2& q) const {
    bool skip_self = true;
    return search(q, skip_self);
}

// Ring search outward from the query's (clamped) cell. When skip_self is
// set, exactly one exact-coordinate match is ignored.
double NearestNeighborGrid::search(const Vec2& q, bool& skip_self) const {
    const int cx = std::min(nx_ - 1, std::max(0, static_cast<int>((q.x - minx_) / cell_)));
    const int cy = std::min(ny_ - 1, std::max(0, static_cast<int>((q.y - miny_) / cell_)));
    // distance from q to its clamped center cell (0 when q is inside the grid)
    const double ccx0 = minx_ + cx * cell_, ccx1 = ccx0 + cell_;
    const double ccy0 = miny_ + cy * cell_, ccy1 = ccy0 + cell_;
    const double off_x = std::max({0.0, ccx0 - q.x, q.x - ccx1});
    const double off_y = std::max({0.0, ccy0 - q.y, q.y - ccy1});
    const double offset = std::hypot(off_x, off_y);

    double best_sq = kInf;
    const int max_ring = std::max(nx_, ny_);
    for (int r = 0; r <= max_ring; ++r) {
        if (r > 0) {
            // indexed points are inside the bbox, so their distance to q
            // splits orthogonally across the offset and the in-grid part
            const double lb = (r - 1) * cell_;
            if (lb * lb + offset * offset >= best_sq) break;
        }
        const int x0 = cx - r, x1 = cx + r, y0 = cy - r, y1 = cy + r;
        auto scan_cell = [&](int ix, int iy) {
            if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
            const std::size_t ci = cell_index(ix, iy);
            for (std::size_t k = cell_start_[ci]; k < cell_start_[ci + 1]; ++k) {
                const double dsq = dist_sq(q, pts_[k]);
                if (dsq == 0.0 && skip_self) {
                    skip_self = false;
                    continue;
                }
                best_sq = std::min(best_sq, dsq);
            }
        };
        if (r == 0) {
            scan_cell(cx, cy);
            continue;
        }
        for (int ix = x0; ix <= x1; ++ix) {
            scan_cell(ix, y0);
            scan_cell(ix, y1);
        }
        for (int iy = y0 + 1; iy <= y1 - 1; ++iy) {
            scan_cell(x0, iy);
            scan_cell(x1, iy);
        }
    }
    return std::sqrt(best_sq);
}

double directed_hausdorff(const PointCloud& a, const NearestNeighborGrid& b) {
    if (par::threads() <= 1 || a.pts.size() < 2048) {
        double worst = 0.0;
        for (const Vec2& p : a.pts) worst = std::max(worst, b.nearest_dist(p));
        return worst;
    }
    std::atomic<double> worst{0.0};
    par::parallel_for(a.pts.size(), [&](std::size_t begin, std::size_t end) {
        double local = 0.0;
        for (std::size_t i = begin; i < end; ++i) local = std::max(local, b.nearest_dist(a.pts[i]));
        double cur = worst.load();
        while (local > cur && !worst.compare_exchange_weak(cur, local)) {
        }
    });
    return worst.load();  // max is order-independent
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
    NearestNeighborGrid grid(b.pts);
    return directed_hausdorff(a, grid);
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.pts.empty() || b.pts.empty()) throw std::invalid_argument("hausdorff: empty cloud");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double diameter(const PointCloud& a) {
    if (a.pts.empty()) throw std::invalid_argument("diameter: empty cloud");
    if (a.pts.size() == 1) return 0.0;
    const ConvexPolygon hull = convex_hull(a.pts);
    return polygon_diameter(hull);
}

bool eps_dense(const PointCloud& x, const PointCloud& y, double eps) {
    if (eps <= 0) throw std::invalid_argument("eps_dense: eps must be positive");
    NearestNeighborGrid grid(x.pts);
    for (const Vec2& p : y.pts)
        if (grid.nearest_dist(p) > eps) return false;
    return true;
}

PointCloud stretch(const PointCloud& x, const Vec2& v, int samples_per_unit) {
    if (v.norm_sq() == 0.0) throw std::invalid_argument("stretch: zero direction");
    if (samples_per_unit <= 0) throw std::invalid_argument("stretch: nonpositive density");
    const double sweep_len = 2.0 * v.norm();
    const int m = std::max(1, static_cast<int>(std::ceil(sweep_len * samples_per_unit)));
    std::vector<Vec2> out;
    out.reserve(x.pts.size() * (m + 1));
    for (const Vec2& p : x.pts) {
        const Vec2 start = p - v;
        for (int k = 0; k <= m; ++k) out.push_back(start + v * (2.0 * k / m));
    }
    const double sweep_spacing = sweep_len / m;
    const double hint =
        x.pts.size() >= 2 ? std::min(x.resolution_hint, sweep_spacing) : sweep_spacing;
    return PointCloud(std::move(out), hint);
}

double max_nn_spacing(const PointCloud& cloud) {
    if (cloud.pts.size() < 2) return 0.0;
    NearestNeighborGrid grid(cloud.pts);
    double worst = 0.0;
    for (const Vec2& q : cloud.pts) worst = std::max(worst, grid.nearest_other_dist(q));
    return worst;
}

// ---------------------------------------------------------------------------
// Convex hulls and polygons

ConvexPolygon convex_hull(std::vector<Vec2> pts) {
    if (pts.empty()) throw std::invalid_argument("convex_hull: empty point set");
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ConvexPolygon poly;
    if (pts.size() == 1) {
        poly.vertices = pts;
        poly.degenerate = true;
        return poly;
    }
    const std::size_t n = pts.size();
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    poly.vertices = std::move(hull);
    poly.degenerate = poly.vertices.size() <= 2;
    return poly;
}

std::vector<Vec2Q> zonogon_vertices(const std::vector<Vec2Q>& generators) {
    if (generators.empty()) throw std::invalid_argument("zonogon: no generators");
    // normalize each generator into the upper half plane (angle in [0, pi))
    std::vector<Vec2Q> gens;
    gens.reserve(generators.size());
    for (const Vec2Q& g : generators) {
        if (g.is_zero()) throw std::invalid_argument("zonogon: zero generator");
        const bool upper = g.y > 0 || (g.y == 0 && g.x > 0);
        gens.push_back(upper ? g : -g);
    }
    // sort by angle; exact comparison via cross product (all in [0, pi))
    std::sort(gens.begin(), gens.end(), [](const Vec2Q& u, const Vec2Q& v) {
        const Rat c = u.cross(v);
        if (c != 0) return c > 0;
        // collinear: arbitrary but deterministic
        return u.x < v.x || (u.x == v.x && u.y < v.y);
    });
    // merge collinear runs
    std::vector<Vec2Q> merged;
    for (const Vec2Q& g : gens) {
        if (!merged.empty() && merged.back().cross(g) == 0)
            merged.back() = merged.back() + g;
        else
            merged.push_back(g);
    }
    Vec2Q total{Rat(0), Rat(0)};
    for (const Vec2Q& g : merged) total = total + g;

    if (merged.size() == 1) return {-total, total};  // degenerate segment

    // walk the lower-to-upper chain, then mirror
    std::vector<Vec2Q> verts;
    verts.reserve(2 * merged.size());
    Vec2Q v = -total;
    verts.push_back(v);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        v = v + merged[i] * Rat(2);
        verts.push_back(v);
    }
    const std::size_t half = verts.size();
    for (std::size_t i = 0; i < half; ++i) verts.push_back(-verts[i]);
    return verts;
}

ConvexPolygon minkowski_zonogon(const std::vector<Vec2Q>& generators) {
    const std::vector<Vec2Q> verts = zonogon_vertices(generators);
    ConvexPolygon poly;
    poly.vertices.reserve(verts.size());
    for (const Vec2Q& v : verts) poly.vertices.push_back(v.to_double());
    poly.degenerate = verts.size() == 2;
    poly.point_symmetric = true;
    return poly;
}

double polygon_diameter(const ConvexPolygon& poly) {
    // hull sizes stay small here, so the quadratic scan is fine
    const std::vector<Vec2>& v = poly.vertices;
    if (v.empty()) throw std::invalid_argument("polygon_diameter: empty polygon");
    double best_sq = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            best_sq = std::max(best_sq, dist_sq(v[i], v[j]));
    return std::sqrt(best_sq);
}

Vec2 polygon_centroid_vertices(const ConvexPolygon& poly) {
    double sx = 0, sy = 0;
    for (const Vec2& p : poly.vertices) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(poly.vertices.size());
    return {sx / n, sy / n};
}

double dist_point_polygon(const Vec2& v, const ConvexPolygon& poly) {
    const std::vector<Vec2>& vs = poly.vertices;
    if (vs.empty()) throw std::invalid_argument("dist_point_polygon: empty polygon");
    if (vs.size() == 1) return dist(v, vs[0]);
    if (vs.size() == 2) return dist_point_segment(v, vs[0], vs[1]);
    bool inside = true;
    double best = kInf;
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = vs[i];
        const Vec2& q = vs[(i + 1) % n];
        if ((q - p).cross(v - p) < 0) inside = false;
        best = std::min(best, dist_point_segment(v, p, q));
    }
    return inside ? 0.0 : best;
}

PointCloud sample_polygon(const ConvexPolygon& poly, double step) {
    if (step <= 0) throw std::invalid_argument("sample_polygon: nonpositive step");
    const std::vector<Vec2>& vs = poly.vertices;
    if (vs.empty()) throw std::invalid_argument("sample_polygon: empty polygon");
    std::vector<Vec2> out;
    if (vs.size() == 1) return PointCloud({vs[0]}, 0.0);

    // boundary at half the step
    const std::size_t n = vs.size();
    const std::size_t edges = vs.size() == 2 ? 1 : n;
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec2& p = vs[i];
        const Vec2& q = vs[(i + 1) % n];
        const double len = dist(p, q);
        const int m = std::max(1, static_cast<int>(std::ceil(len / (0.5 * step))));
        for (int k = 0; k < m; ++k) out.push_back(p + (q - p) * (static_cast<double>(k) / m));
    }
    if (vs.size() == 2) out.push_back(vs[1]);

    if (vs.size() >= 3) {
        double minx = kInf, miny = kInf, maxx = -kInf, maxy = -kInf;
        for (const Vec2& p : vs) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        for (double y = miny; y <= maxy; y += step)
            for (double x = minx; x <= maxx; x += step) {
                const Vec2 p{x, y};
                if (dist_point_polygon(p, poly) == 0.0) out.push_back(p);
            }
    }
    return PointCloud(std::move(out), step);
}

// ---------------------------------------------------------------------------
// Norms, angles, completion

double op_norm(double a, double b, double c, double d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw std::invalid_argument("op_norm: non-finite entries");
    // eigenvalues of M^T M: lambda = (T +- sqrt(T^2 - 4 det^2)) / 2
    const double t = a * a + b * b + c * c + d * d;
    const double dt = a * d - b * c;
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * dt * dt));
    return std::sqrt((t + disc) / 2.0);
}

double op_norm(const Mat2Z& m) {
    return op_norm(static_cast<double>(m.a), static_cast<double>(m.b), static_cast<double>(m.c),
                   static_cast<double>(m.d));
}

double angular_distance(const Vec2& u, const Vec2& v) {
    if (u.norm_sq() == 0.0 || v.norm_sq() == 0.0)
        throw std::invalid_argument("angular_distance: zero vector");
    return std::atan2(std::abs(u.cross(v)), u.dot(v));
}

double projective_distance(const Vec2& u, const Vec2& v) {
    const double a = angular_distance(u, v);
    return std::min(a, std::acos(-1.0) - a);
}

Mat2Z primitive_completion(std::int64_t w1, std::int64_t w2) {
    if (w1 == 0 && w2 == 0) throw std::invalid_argument("primitive_completion: zero vector");
    if (std::gcd(std::abs(w1), std::abs(w2)) != 1)
        throw std::invalid_argument("primitive_completion: vector is not primitive");

    // solve p*w2 - q*w1 = 1
    std::int64_t p, q;
    if (w1 == 0) {
        p = w2;  // w2 = +-1
        q = 0;
    } else if (w2 == 0) {
        p = 0;
        q = -w1;  // w1 = +-1
    } else {
        // extended gcd: x*|w1| + y*|w2| = 1
        std::int64_t r0 = std::abs(w1), r1 = std::abs(w2);
        std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
            const std::int64_t qt = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
            std::tie(x0, x1) = std::make_pair(x1, x0 - qt * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - qt * y1);
        }
        // x0*|w1| + y0*|w2| = 1
        const std::int64_t sx = w1 < 0 ? -1 : 1;
        const std::int64_t sy = w2 < 0 ? -1 : 1;
        // (sx*x0)*w1 + (sy*y0)*w2 = 1  ->  p = sy*y0, q = -sx*x0
        p = sy * y0;
        q = -sx * x0;
    }

    // general solution: (p + t*w1, q + t*w2); minimize (|p'|, |q'|) lexicographically
    auto better = [](std::int64_t p1, std::int64_t q1, std::int64_t p2, std::int64_t q2) {
        if (std::abs(p1) != std::abs(p2)) return std::abs(p1) < std::abs(p2);
        if (std::abs(q1) != std::abs(q2)) return std::abs(q1) < std::abs(q2);
        if (p1 != p2) return p1 > p2;
        return q1 > q2;
    };
    std::int64_t bp = p, bq = q;
    if (w1 != 0) {
        const std::int64_t t0 = static_cast<std::int64_t>(std::llround(-static_cast<double>(p) / w1));
        for (std::int64_t t = t0 - 2; t <= t0 + 2; ++t) {
            const std::int64_t cp = p + t * w1;
            const std::int64_t cq = q + t * w2;
            if (better(cp, cq, bp, bq)) {
                bp = cp;
                bq = cq;
            }
        }
    } else {
        const std::int64_t t0 = static_cast<std::int64_t>(std::llround(-static_cast<double>(q) / w2));
        for (std::int64_t t = t0 - 2; t <= t0 + 2; ++t) {
            const std::int64_t cp = p;  // unchanged when w1 == 0
            const std::int64_t cq = q + t * w2;
            if (better(cp, cq, bp, bq)) {
                bp = cp;
                bq = cq;
            }
        }
    }
    Mat2Z out{bp, w1, bq, w2};
    if (out.det() != 1) throw std::logic_error("primitive_completion: determinant is not +1");
    return out;
}

}  // namespace torus::geom
