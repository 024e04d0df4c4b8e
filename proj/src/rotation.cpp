#include "torus/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torus::rotation {

RotationEstimate rotation_set_estimate(const MapFn& map, long n, const FundamentalDomain& dom) {
    if (n < 1) throw std::invalid_argument("rotation_set_estimate: n must be >= 1");
    std::vector<Vec2> pts = dom.cloud.pts;
    for (long k = 0; k < n; ++k)
        for (Vec2& p : pts) p = map(p);
    for (Vec2& p : pts) p = p * (1.0 / static_cast<double>(n));
    RotationEstimate est;
    est.n = n;
    est.hull = geom::convex_hull(pts);
    est.diameter = geom::polygon_diameter(est.hull);
    return est;
}

GeneralizedRotEstimate generalized_rot_estimate(const MapFn& map,
                                                const std::vector<long>& subsequence,
                                                const FundamentalDomain& dom) {
    if (subsequence.empty())
        throw std::invalid_argument("generalized_rot_estimate: empty subsequence");
    for (std::size_t i = 0; i < subsequence.size(); ++i) {
        if (subsequence[i] < 1 || (i > 0 && subsequence[i] <= subsequence[i - 1]))
            throw std::invalid_argument(
                "generalized_rot_estimate: subsequence must be strictly increasing and positive");
    }

    GeneralizedRotEstimate out;
    out.subsequence = subsequence;

    std::vector<Vec2> pts = dom.cloud.pts;
    Vec2 base = dom.basepoint;
    long done = 0;
    for (long target : subsequence) {
        for (; done < target; ++done) {
            for (Vec2& p : pts) p = map(p);
            base = map(base);
        }
        PointCloud image(pts, 0.0);
        const double diam = geom::diameter(image);
        out.diam_trace.push_back(diam);
        if (diam < 1e-9)
            throw std::invalid_argument("generalized_rot_estimate: degenerate normalization (diam ~ 0)");
        std::vector<Vec2> norm_pts;
        norm_pts.reserve(pts.size());
        for (const Vec2& p : pts) norm_pts.push_back((p - base) * (1.0 / diam));
        PointCloud normalized(std::move(norm_pts), 0.0);
        normalized.resolution_hint = geom::max_nn_spacing(normalized);
        out.normalized.push_back(std::move(normalized));
    }

    const std::size_t m = out.normalized.size();
    const std::size_t first = m > 3 ? m - 3 : 0;
    double gap = 0.0;
    for (std::size_t i = first; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            gap = std::max(gap, geom::hausdorff(out.normalized[i], out.normalized[j]));
    out.cauchy_gap = gap;
    return out;
}

DeviationProfile deviation_profile(const MapFn& map, const Vec2& v, const Vec2& rho, long n_max,
                                   const FundamentalDomain& dom) {
    if (v.norm_sq() == 0.0) throw std::invalid_argument("deviation_profile: zero direction");
    if (n_max < 1) throw std::invalid_argument("deviation_profile: N must be >= 1");
    DeviationProfile out;
    out.direction = v;
    out.rho = rho;
    std::vector<Vec2> pts = dom.cloud.pts;
    const std::vector<Vec2>& orig = dom.cloud.pts;
    for (long n = 1; n <= n_max; ++n) {
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            pts[i] = map(pts[i]);
            const Vec2 dev = pts[i] - orig[i] - rho * static_cast<double>(n);
            worst = std::max(worst, std::abs(dev.dot(v)));
        }
        out.per_n.push_back(worst);
    }
    return out;
}

namespace {

double torus_dist(const Vec2& d) {
    const double fx = d.x - std::round(d.x);
    const double fy = d.y - std::round(d.y);
    return std::hypot(fx, fy);
}

}  // namespace

std::vector<double> rigidity_profile(const MapFn& map, long n_max, const FundamentalDomain& dom) {
    if (n_max < 1) throw std::invalid_argument("rigidity_profile: N must be >= 1");
    std::vector<double> out;
    out.reserve(n_max);
    std::vector<Vec2> pts = dom.cloud.pts;
    const std::vector<Vec2>& orig = dom.cloud.pts;
    for (long n = 1; n <= n_max; ++n) {
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            pts[i] = map(pts[i]);
            worst = std::max(worst, torus_dist(pts[i] - orig[i]));
        }
        out.push_back(worst);
    }
    return out;
}

SpreadProbeResult weak_spreading_probe(const MapFn& map, const PointCloud& u, double eps,
                                       double radius, long n_max) {
    if (!(eps > 0) || !(radius > 0))
        throw std::invalid_argument("weak_spreading_probe: eps and R must be positive");
    if (n_max < 1) throw std::invalid_argument("weak_spreading_probe: N must be >= 1");

    // ball sample offsets at step eps/2, reused for every candidate center
    std::vector<Vec2> ball;
    const double step = eps / 2.0;
    for (double y = -radius; y <= radius; y += step)
        for (double x = -radius; x <= radius; x += step)
            if (x * x + y * y <= radius * radius) ball.push_back({x, y});
    if (ball.empty()) ball.push_back({0.0, 0.0});

    std::vector<Vec2> pts = u.pts;
    for (long n = 1; n <= n_max; ++n) {
        for (Vec2& p : pts) p = map(p);
        const PointCloud image(pts, 0.0);
        geom::NearestNeighborGrid grid(image.pts);

        double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
        for (const Vec2& p : pts) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        double cstep = radius / 2.0;
        // keep the candidate grid bounded on wildly stretched images
        const double spanx = maxx - minx, spany = maxy - miny;
        while ((spanx / cstep + 1) * (spany / cstep + 1) > 250000.0) cstep *= 2.0;

        for (double cy = miny; cy <= maxy; cy += cstep)
            for (double cx = minx; cx <= maxx; cx += cstep) {
                const Vec2 center{cx, cy};
                if (grid.nearest_dist(center) > eps) continue;
                bool dense = true;
                for (const Vec2& off : ball) {
                    if (grid.nearest_dist(center + off) > eps) {
                        dense = false;
                        break;
                    }
                }
                if (dense) return {true, n, center};
            }
    }
    return {false, 0, {}};
}

}  // namespace torus::rotation
