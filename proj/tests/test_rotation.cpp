#include "torus/rotation.hpp"

#include "torus/spreader.hpp"

#include <doctest.h>

#include <cmath>

using namespace torus::rotation;
using torus::dynamics::FundamentalDomain;
using torus::dynamics::Generator;
using torus::dynamics::Linear;
using torus::dynamics::LiftWord;
using torus::dynamics::make_domain;
using torus::dynamics::make_word;
using torus::dynamics::Shear;
using torus::dynamics::Translation;
using torus::geom::Mat2Z;
using torus::geom::PointCloud;
using torus::geom::Vec2;

namespace {

MapFn fn(std::vector<Generator> gens) { return torus::dynamics::as_fn(make_word(std::move(gens))); }

double hull_dist_to_point(const torus::geom::ConvexPolygon& hull, const Vec2& p) {
    double worst = 0.0;
    for (const Vec2& v : hull.vertices) worst = std::max(worst, torus::geom::dist(v, p));
    return worst;
}

}  // namespace

TEST_CASE("rotation estimate of a rigid translation") {
    const FundamentalDomain dom = make_domain(16);
    const Vec2 theta{1.0 / 3.0, 0.5};
    for (long n : {10L, 100L}) {
        const auto est = rotation_set_estimate(fn({Translation{theta}}), n, dom);
        CHECK(hull_dist_to_point(est.hull, theta) <= std::sqrt(2.0) / n + 1e-12);
        CHECK(est.diameter <= std::sqrt(2.0) / n + 1e-12);
    }
    const auto ident = rotation_set_estimate(fn({}), 25, dom);
    CHECK(hull_dist_to_point(ident.hull, {0, 0}) <= std::sqrt(2.0) / 25 + 1e-12);
}

TEST_CASE("rotation estimate of a conjugated translation shrinks like 1/n") {
    const FundamentalDomain dom = make_domain(16);
    const Vec2 theta{0.37, 0.21};
    // h R_theta h^{-1} for a fixed word h
    const LiftWord h = make_word({Shear{0.8, 2}, Linear{Mat2Z{1, 1, 0, 1}}, Shear{-0.5, 3}});
    const LiftWord conj = torus::dynamics::compose(
        torus::dynamics::compose(h, make_word({Translation{theta}})), torus::dynamics::inverse(h));
    const MapFn map = torus::dynamics::as_fn(conj);

    const auto at_n = rotation_set_estimate(map, 40, dom);
    const auto at_2n = rotation_set_estimate(map, 80, dom);
    CHECK(at_2n.diameter <= at_n.diameter / 2.0 * 1.5);
    // the hull stays near theta (within the conjugation corrector over n)
    CHECK(hull_dist_to_point(at_2n.hull, theta) <= 0.35);
}

TEST_CASE("rotation estimate is equivariant under integer lift changes") {
    const FundamentalDomain dom = make_domain(12);
    const LiftWord base = make_word({Shear{1.0, 2}, Translation{{0.3, 0.6}}});
    const LiftWord shifted = torus::dynamics::compose(make_word({Translation{{2, -1}}}), base);
    const long n = 7;
    const auto est = rotation_set_estimate(torus::dynamics::as_fn(base), n, dom);
    const auto est_shifted = rotation_set_estimate(torus::dynamics::as_fn(shifted), n, dom);
    // hulls agree as convex bodies after removing the integer shift (vertex
    // counts may differ where near-collinear points flip)
    const Vec2 delta{2, -1};
    for (const Vec2& v : est_shifted.hull.vertices)
        CHECK(torus::geom::dist_point_polygon(v - delta, est.hull) <= 1e-9);
    for (const Vec2& v : est.hull.vertices)
        CHECK(torus::geom::dist_point_polygon(v + delta, est_shifted.hull) <= 1e-9);
}

TEST_CASE("rotation estimates at n and 2n stay within diam(D)/n") {
    const FundamentalDomain dom = make_domain(16);
    const Vec2 theta{0.41, 0.13};
    const MapFn map = fn({Translation{theta}});
    for (long n : {5L, 20L}) {
        const auto at_n = rotation_set_estimate(map, n, dom);
        const auto at_2n = rotation_set_estimate(map, 2 * n, dom);
        const PointCloud a(at_n.hull.vertices, 0.0);
        const PointCloud b(at_2n.hull.vertices, 0.0);
        CHECK(torus::geom::hausdorff(a, b) <= std::sqrt(2.0) / n + 1e-12);
    }
}

TEST_CASE("generalized estimate flags bounded diameters, tracks shear growth") {
    const FundamentalDomain dom = make_domain(12);
    const auto flat = generalized_rot_estimate(fn({Translation{{0.3, 0.1}}}), {1, 2, 4, 8}, dom);
    for (double d : flat.diam_trace) CHECK(d == doctest::Approx(std::sqrt(2.0)));
    // translated copies normalize to the same cloud
    CHECK(flat.cauchy_gap <= 1e-9);

    const auto grown = generalized_rot_estimate(fn({Shear{1.0, 1}}), {1, 2, 3, 4}, dom);
    for (std::size_t i = 1; i < grown.diam_trace.size(); ++i)
        CHECK(grown.diam_trace[i] > grown.diam_trace[i - 1]);
    // vertical spread of J^n is 2n on the unit square
    CHECK(grown.diam_trace[3] >= 8.0);
    for (const PointCloud& cloud : grown.normalized) {
        CHECK(torus::geom::diameter(cloud) == doctest::Approx(1.0).epsilon(1e-9));
        double best = 1e18;
        for (const Vec2& p : cloud.pts) best = std::min(best, p.norm());
        CHECK(best <= 1e-12);  // contains the origin
    }

    CHECK_THROWS_AS(generalized_rot_estimate(fn({}), {2, 2}, dom), std::invalid_argument);
}

TEST_CASE("deviation profile") {
    const FundamentalDomain dom = make_domain(10);
    const Vec2 rho{0.4, -0.3};
    const auto matched = deviation_profile(fn({Translation{rho}}), {1, 1}, rho, 12, dom);
    for (double d : matched.per_n) CHECK(d <= 1e-10);

    const auto vertical = deviation_profile(fn({Shear{1.0, 1}}), {0, 1}, {0, 0}, 10, dom);
    for (std::size_t i = 0; i < vertical.per_n.size(); ++i)
        CHECK(vertical.per_n[i] == doctest::Approx(static_cast<double>(i + 1)));

    const auto horizontal = deviation_profile(fn({Shear{1.0, 1}}), {1, 0}, {0, 0}, 10, dom);
    for (double d : horizontal.per_n) CHECK(d == 0.0);

    // absolute homogeneity in the direction
    const auto doubled = deviation_profile(fn({Shear{1.0, 1}}), {0, -2}, {0, 0}, 10, dom);
    for (std::size_t i = 0; i < doubled.per_n.size(); ++i)
        CHECK(doubled.per_n[i] == doctest::Approx(2.0 * vertical.per_n[i]));

    CHECK_THROWS_AS(deviation_profile(fn({}), {0, 0}, {0, 0}, 3, dom), std::invalid_argument);
}

TEST_CASE("rigidity profile") {
    const FundamentalDomain dom = make_domain(8);
    const auto rational = rigidity_profile(fn({Translation{{1.0 / 3.0, 0.0}}}), 9, dom);
    CHECK(rational[2] <= 1e-12);   // n = 3
    CHECK(rational[5] <= 1e-12);   // n = 6
    CHECK(rational[8] <= 1e-12);   // n = 9
    CHECK(rational[0] > 0.3);

    const auto ident = rigidity_profile(fn({}), 5, dom);
    for (double d : ident) CHECK(d == 0.0);

    // golden-mean translation dips below 0.01 within 200 iterates
    const double golden_frac = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto gold = rigidity_profile(fn({Translation{{golden_frac, 0.0}}}), 200, dom);
    double best = 1e18;
    for (double d : gold) best = std::min(best, d);
    CHECK(best < 0.01);
}

TEST_CASE("weak spreading probe: translations never spread") {
    std::vector<Vec2> pts;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) pts.push_back({i / 100.0, j / 100.0});
    const PointCloud u(pts, 0.015);
    const auto res =
        weak_spreading_probe(fn({Translation{{0.37, 0.19}}}), u, 0.05, 1.0, 6);
    CHECK_FALSE(res.found);
}

TEST_CASE("weak spreading probe: trivial find when eps dwarfs the ball") {
    const PointCloud u({{0.5, 0.5}, {0.52, 0.5}}, 0.02);
    const auto res = weak_spreading_probe(fn({Translation{{0.1, 0.0}}}), u, 2.5, 1.0, 3);
    CHECK(res.found);
    CHECK(res.n == 1);
}

TEST_CASE("weak spreading probe: spreader word spreads a small disk") {
    const auto recipe = torus::spreader::build_spreader(
        {{torus::geom::Vec2Q(1, 0), torus::geom::Vec2Q(0, 1)}}, 1.0);
    std::vector<Vec2> pts;
    const int m = 70;
    for (int iy = -m; iy <= m; ++iy)
        for (int ix = -m; ix <= m; ++ix) {
            const Vec2 off{0.3 * ix / m, 0.3 * iy / m};
            if (off.norm_sq() <= 0.09) pts.push_back(Vec2{0.5, 0.5} + off);
        }
    const PointCloud disk(pts, 0.3 / m * std::sqrt(2.0));
    const auto res = weak_spreading_probe(torus::dynamics::as_fn(recipe.f_word), disk, 0.35, 1.0, 2);
    CHECK(res.found);
}
