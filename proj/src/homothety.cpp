#include "torus/homothety.hpp"

#include <algorithm>
#include <cmath>

namespace torus::homothety {

using geom::NearestNeighborGrid;

HomothetyRep normalize(const PointCloud& k) {
    const double diam = geom::diameter(k);
    if (diam <= 0.0) throw std::invalid_argument("normalize: degenerate input (zero diameter)");
    const Vec2 c = k.centroid();
    std::vector<Vec2> pts;
    pts.reserve(k.size());
    for (const Vec2& p : k.pts) pts.push_back((p - c) * (1.0 / diam));
    HomothetyRep rep;
    rep.shape = PointCloud(std::move(pts), k.resolution_hint / diam);
    rep.anchor = c;
    rep.original_diameter = diam;
    return rep;
}

HomothetyRep normalize(const ConvexPolygon& poly, double sample_step) {
    return normalize(geom::sample_polygon(poly, sample_step));
}

namespace {

struct GapEvaluator {
    const PointCloud& kn;
    const PointCloud& target;
    NearestNeighborGrid target_grid;
    NearestNeighborGrid kn_grid;

    GapEvaluator(const PointCloud& k_normalized, const PointCloud& target_shape)
        : kn(k_normalized),
          target(target_shape),
          target_grid(target_shape.pts),
          kn_grid(k_normalized.pts) {}

    // d_H(kn, target + t) without rebuilding either index
    double operator()(const Vec2& t) const {
        double worst = 0.0;
        for (const Vec2& p : kn.pts) worst = std::max(worst, target_grid.nearest_dist(p - t));
        for (const Vec2& p : target.pts) worst = std::max(worst, kn_grid.nearest_dist(p + t));
        return worst;
    }
};

bool lex_less(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

}  // namespace

TranslationFit best_translation_fit(const PointCloud& normalized, const HomothetyRep& target,
                                    double step0) {
    if (!(step0 > 0)) throw std::invalid_argument("best_translation_fit: step must be positive");
    GapEvaluator gap(normalized, target.shape);

    Vec2 t = normalized.centroid();  // target centroid is the origin
    double best = gap(t);

    const double steps[] = {step0, step0 / 2.5, step0 / 5.0};
    for (double step : steps) {
        for (int iter = 0; iter < 200; ++iter) {
            Vec2 best_t = t;
            double best_g = best;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    const Vec2 cand{t.x + dx * step, t.y + dy * step};
                    const double g = gap(cand);
                    if (g < best_g - 1e-15 || (g <= best_g && lex_less(cand, best_t))) {
                        best_g = g;
                        best_t = cand;
                    }
                }
            if (best_t == t) break;
            t = best_t;
            best = best_g;
        }
    }
    return {t, best, steps[2]};
}

LargeApproxResult large_approx_check(const PointCloud& k, const HomothetyRep& target, double r) {
    if (r <= 0.0) throw std::invalid_argument("large_approx_check: r must be positive");
    if (std::abs(geom::diameter(target.shape) - 1.0) > 1e-6)
        throw std::invalid_argument("large_approx_check: target is not normalized to diameter 1");

    LargeApproxResult res;
    res.witness.r = r;
    const double scale = geom::diameter(k);
    res.witness.scale = scale;
    if (!(scale > r)) {
        res.status = LargeApproxStatus::too_small;
        return res;
    }

    std::vector<Vec2> pts;
    pts.reserve(k.size());
    for (const Vec2& p : k.pts) pts.push_back(p * (1.0 / scale));
    const PointCloud kn(std::move(pts), k.resolution_hint / scale);

    const TranslationFit fit = best_translation_fit(kn, target, (1.0 / r) / 4.0);

    res.witness.translation = fit.translation;
    res.witness.achieved_gap = fit.gap;
    res.witness.sampling_slack =
        k.resolution_hint / scale + target.shape.resolution_hint + fit.search_step;
    res.status = (fit.gap + res.witness.sampling_slack < 1.0 / r)
                     ? LargeApproxStatus::ok
                     : LargeApproxStatus::shape_mismatch;
    return res;
}

double perturbation_bound(double r, double d0) {
    if (r <= 0.0 || d0 <= 0.0)
        throw std::invalid_argument("perturbation_bound: inputs must be positive");
    return 2.0 * d0 + r + 3.0 * d0 * r;
}

double linear_map_bound(double r, double a, double b, double c, double d) {
    if (r <= 0.0) throw std::invalid_argument("linear_map_bound: r must be positive");
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det))
        throw std::invalid_argument("linear_map_bound: matrix is singular");
    const double norm_a = geom::op_norm(a, b, c, d);
    const double norm_inv = geom::op_norm(d, -b, -c, a) / std::abs(det);
    return r * norm_inv * std::max(3.0 * norm_a, 1.0);
}

double linear_map_bound(double r, const geom::Mat2Z& m) {
    return linear_map_bound(r, static_cast<double>(m.a), static_cast<double>(m.b),
                            static_cast<double>(m.c), static_cast<double>(m.d));
}

}  // namespace torus::homothety
