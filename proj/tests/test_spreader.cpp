#include "torus/spreader.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace torus::spreader;
using torus::dynamics::FundamentalDomain;
using torus::dynamics::Generator;
using torus::dynamics::LiftWord;
using torus::dynamics::Shear;
using torus::geom::Mat2Z;
using torus::geom::PointCloud;
using torus::geom::Rat;
using torus::geom::Segment;
using torus::geom::Vec2;
using torus::geom::Vec2Q;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec2Q> q_gens(std::initializer_list<std::pair<long, long>> pairs) {
    std::vector<Vec2Q> out;
    for (const auto& [x, y] : pairs) out.push_back(Vec2Q(x, y));
    return out;
}

int count_shears(const LiftWord& w) {
    int n = 0;
    for (const Generator& g : w.word)
        if (std::holds_alternative<Shear>(g)) ++n;
    return n;
}

Mat2Z random_sl2(std::mt19937_64& rng, int passes = 3) {
    Mat2Z m;
    for (int i = 0; i < passes; ++i) {
        const std::int64_t k = static_cast<std::int64_t>(rng() % 5) - 2;
        m = m.mul(rng() % 2 ? Mat2Z{1, k, 0, 1} : Mat2Z{1, 0, k, 1});
    }
    return m;
}

}  // namespace

TEST_CASE("derive_stage: vertical, generic, and negative generators") {
    const StageData vertical = derive_stage(Vec2Q(0, 1));
    CHECK(vertical.a_mat.is_identity());
    CHECK(vertical.eta == Rat(1, 2));

    const StageData diag = derive_stage(Vec2Q(4, 2));
    CHECK(diag.eta == Rat(1));
    CHECK(diag.a_mat == Mat2Z{1, 2, 0, 1});

    const StageData down = derive_stage(Vec2Q(0, -3));
    CHECK(down.a_mat.is_identity());
    CHECK(down.eta == Rat(-3, 2));

    CHECK_THROWS_AS(derive_stage(Vec2Q(0, 0)), std::invalid_argument);
}

TEST_CASE("derive_stage identity holds exactly for random rational generators") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    for (int trial = 0; trial < 300; ++trial) {
        Vec2Q v{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
        if (v.is_zero()) v = Vec2Q(1, 1);
        const StageData s = derive_stage(v);
        CHECK(s.a_mat.det() == 1);
        const Vec2Q image = s.a_mat.apply(Vec2Q{Rat(0), s.eta});
        CHECK(image.x == v.x / 2);
        CHECK(image.y == v.y / 2);
    }
}

TEST_CASE("slope_bounds identity cases") {
    const SlopeBounds sb = slope_bounds(Mat2Z{}, kPi / 4, kPi / 4);
    CHECK(sb.max_slope == doctest::Approx(1.0));
    CHECK(sb.min_slope == doctest::Approx(1.0));

    const SlopeBounds sixth = slope_bounds(Mat2Z{}, kPi / 4, kPi / 6);
    CHECK(sixth.min_slope == doctest::Approx(std::sqrt(3.0)));

    CHECK_THROWS_AS(slope_bounds(Mat2Z{}, 0.0, kPi / 4), std::invalid_argument);
    CHECK_THROWS_AS(slope_bounds(Mat2Z{}, kPi / 4, 2.0), std::invalid_argument);
}

TEST_CASE("slope_bounds matches the dense sampling oracle") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> ang(0.15, 1.2);
    for (int trial = 0; trial < 12; ++trial) {
        const Mat2Z a = random_sl2(rng);
        const double delta = ang(rng);
        const double delta_prime = ang(rng);
        const SlopeBounds sb = slope_bounds(a, delta, delta_prime);
        CHECK(sb.max_slope ==
              doctest::Approx(oracles::slope_max_sampled(a, delta, 200000)).epsilon(1e-6));
        CHECK(sb.min_slope ==
              doctest::Approx(oracles::slope_min_sampled(a, delta_prime, 200000)).epsilon(1e-6));
    }
}

TEST_CASE("xi0_spread_shape formula") {
    CHECK(xi0_spread_shape(0.5, 0.5, 1.0, 2.0, 1.0) == 6);
    CHECK(xi0_spread_shape(1.0, 1.0, 1.0, 1e-9, 1e-9) == 1);
    // monotone in the slope cap
    int prev = 0;
    for (double big_m : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const int cur = xi0_spread_shape(1.0, 0.5, 0.5, 1.0, big_m);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(xi0_spread_shape(0.0, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("xi0_corollary reduces to the plain bound for the identity") {
    const double delta = kPi / 5;
    const SlopeBounds sb = slope_bounds(Mat2Z{}, delta, delta);
    CHECK(xi0_corollary(0.7, Mat2Z{}, 0.4, 0.25, delta, delta) ==
          xi0_spread_shape(0.7, 0.25, 0.4, sb.min_slope, sb.max_slope));

    // conjugated bound recomputed end to end from the sampled slope box
    const Mat2Z shear_mat{1, 2, 0, 1};
    const double norm_a = torus::geom::op_norm(shear_mat);
    const double m_o = oracles::slope_min_sampled(shear_mat, 0.3, 200000);
    const double big_o = oracles::slope_max_sampled(shear_mat, 0.3, 200000);
    const int expected = xi0_spread_shape(1.0, 0.25 / norm_a, 0.6 / norm_a, m_o, big_o);
    CHECK(xi0_corollary(1.0, shear_mat, 0.6, 0.25, 0.3, 0.3) == expected);
}

TEST_CASE("build_spreader: square target numbers") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {0, 1}}), 2.0);
    CHECK(recipe.params.scale_k == 8);
    CHECK(recipe.params.generators.size() == 2);
    CHECK(recipe.params.eps_prime == doctest::Approx(0.25));
    CHECK(recipe.params.lambda == doctest::Approx(0.5));
    CHECK(recipe.params.delta == doctest::Approx(kPi / 4));
    CHECK(recipe.vertical_last);

    // stage for the scaled (8,0): direction (1,0), eta 4, completion with
    // second column (1,0) and det +1
    const StageData& s0 = recipe.params.stages[0];
    CHECK(s0.eta == Rat(4));
    CHECK(s0.a_mat == Mat2Z{0, 1, -1, 0});

    // vertical last generator merges its shear with the final J_{1/2}
    CHECK(count_shears(recipe.f_word) == 2);
}

TEST_CASE("build_spreader: hexagon target numbers") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{2, 0}, {1, 1}, {0, 1}}), 2.0);
    CHECK(recipe.params.generators.size() == 3);
    CHECK(recipe.params.eps_prime == doctest::Approx(1.0 / 6.0));
    CHECK(recipe.params.scale_k == 4);
    CHECK(recipe.vertical_last);  // (0,4) reordered to the last slot
    CHECK(count_shears(recipe.f_word) == 3);
}

TEST_CASE("build_spreader: non-vertical target keeps l+1 shear blocks") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {1, 2}}), 1.0);
    CHECK_FALSE(recipe.vertical_last);
    CHECK(count_shears(recipe.f_word) == 3);  // l + 1 with l = 2
}

TEST_CASE("build_spreader: collinear generators merge, segment target works") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {2, 0}}), 1.0);
    CHECK(recipe.params.generators.size() == 1);
    CHECK(recipe.params.eps_prime == doctest::Approx(0.5));

    const SpreaderRecipe vertical_segment = build_spreader(q_gens({{0, 1}}), 1.0);
    CHECK(vertical_segment.vertical_last);
}

TEST_CASE("build_spreader: xi override must clear xi0") {
    const SpreaderRecipe base = build_spreader(q_gens({{1, 0}, {0, 1}}), 1.0);
    CHECK_THROWS_AS(build_spreader(q_gens({{1, 0}, {0, 1}}), 1.0, base.params.xi0 - 1),
                    std::invalid_argument);
    const SpreaderRecipe bumped = build_spreader(q_gens({{1, 0}, {0, 1}}), 1.0, base.params.xi0 + 5);
    CHECK(bumped.xi == base.params.xi0 + 5);
}

TEST_CASE("factored product equals the conjugated word") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (const auto& gens : {q_gens({{1, 0}, {0, 1}}), q_gens({{2, 0}, {1, 1}, {0, 1}}),
                             q_gens({{1, 0}, {1, 2}})}) {
        const SpreaderRecipe recipe = build_spreader(gens, 1.0);
        const double a = recipe.admissible_a(2);
        const double b = 0.37;
        const auto factors = conjugated_factors(recipe, a, b);

        const LiftWord conj = torus::dynamics::compose(
            torus::dynamics::compose(recipe.f_word,
                                     torus::dynamics::make_word({torus::dynamics::Translation{{a, b}}})),
            torus::dynamics::inverse(recipe.f_word));
        for (int i = 0; i < 25; ++i) {
            const Vec2 p{coord(rng), coord(rng)};
            Vec2 lhs = p;
            for (const LiftWord& f : factors) lhs = torus::dynamics::apply(f, lhs);
            // exact identity up to rounding through the stage slopes; the
            // floor stays orders of magnitude below any algebra defect
            CHECK((lhs - torus::dynamics::apply(conj, p)).norm() <= 1e-7);
        }
    }
}

TEST_CASE("stage polygons follow the stretch recursion") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {0, 1}}), 2.0);
    const double a = recipe.admissible_a(0), b = 0.25;
    const auto polys = stage_polygons(recipe, a, b);
    const int l = 2;
    REQUIRE(static_cast<int>(polys.size()) == 2 * l + 2);

    // K_0 is the center point, K_{l+1} the shifted K_l
    REQUIRE(polys[0].vertices.size() == 1);
    CHECK(polys[0].vertices[0] == Vec2{0.5, 0.5});
    REQUIRE(polys[l].vertices.size() == polys[l + 1].vertices.size());
    for (std::size_t i = 0; i < polys[l].vertices.size(); ++i)
        CHECK((polys[l + 1].vertices[i] - polys[l].vertices[i] - Vec2{a, b}).norm() <= 1e-12);

    // final zonogon has the full-size generators around the shifted center
    const auto want =
        torus::geom::zonogon_vertices(q_gens({{8, 0}, {0, 8}}));
    REQUIRE(polys[2 * l + 1].vertices.size() == want.size());
}

TEST_CASE("shear spreading keeps image points near the stretched set") {
    // random instances of the one-step containment: conj(A) J(Y) inside the
    // eps-neighborhood of Str(X, A(0, eta))
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> eps_dist(0.05, 0.6);
    std::uniform_real_distribution<double> eta_dist(0.3, 2.5);
    std::uniform_int_distribution<int> xi_dist(1, 24);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vec2> x_pts;
        for (int i = 0; i < 25; ++i) x_pts.push_back({coord(rng), coord(rng)});
        const double eps = eps_dist(rng);
        std::vector<Vec2> y_pts;
        for (const Vec2& p : x_pts)
            for (int k = 0; k < 3; ++k) {
                const double ang = coord(rng), rad = eps * 0.45 * (1 + coord(rng) / 4);
                y_pts.push_back(p + Vec2{std::cos(ang), std::sin(ang)} * rad);
            }
        const Mat2Z a = random_sl2(rng);
        const double eta = eta_dist(rng) * (rng() % 2 ? 1 : -1);
        const int xi = xi_dist(rng);
        const Vec2 v = a.apply(Vec2{0.0, eta});

        const LiftWord conj = torus::dynamics::make_word(
            {torus::dynamics::Linear{a}, Shear{eta, xi}, torus::dynamics::Linear{a.inverse()}});
        for (const Vec2& y : y_pts) {
            const Vec2 img = torus::dynamics::apply(conj, y);
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& xp : x_pts)
                best = std::min(best, torus::geom::dist_point_segment(img, xp - v, xp + v));
            CHECK(best <= eps + 1e-9);
        }
    }
}

TEST_CASE("spread_segments: steep long segments out of a shallow one") {
    const double eta = 2.0;
    const int xi = 4;
    const std::vector<Segment> gamma = {Segment({0.0, 0.0}, {1.0, 0.3})};
    const auto out = spread_segments(gamma, eta, xi);
    REQUIRE(!out.empty());
    for (const Segment& s : out) {
        const double dx = s.q.x - s.p.x;
        const double dy = s.q.y - s.p.y;
        const double slope = std::abs(dy / dx);
        CHECK(slope >= 4.0 * eta * xi - 0.3 - 1e-9);
        CHECK(s.length() > eta);
    }
    // half-period count: floor(8x) over [0,1] gives 8 pieces
    CHECK(out.size() == 8);
}

TEST_CASE("spread_segments density in the stretched set") {
    // the extracted subset stays (eps + eps')-dense in Str(X, (0, eta))
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const double eps_prime = 0.35;
        const double ell = 0.8;
        const double m_slope = 1.5, big_m = 0.9;
        const double eta = (trial % 2 ? 1.0 : -0.7);

        // admissible family: shallow long segments; X sampled near them
        std::vector<Segment> gamma;
        std::vector<Vec2> x_pts;
        const double eps = 0.25;
        for (int i = 0; i < 4; ++i) {
            const Vec2 start{coord(rng), coord(rng)};
            const double slope = big_m * (coord(rng) / 1.5);
            const double len = ell * (1.2 + 0.5 * (i % 2));
            const Vec2 dir = Vec2{1.0, slope} * (1.0 / std::hypot(1.0, slope));
            const Segment seg(start, start + dir * len);
            gamma.push_back(seg);
            for (int k = 0; k <= 6; ++k) {
                const Vec2 on = seg.p + dir * (len * k / 6.0);
                x_pts.push_back(on + Vec2{coord(rng), coord(rng)} * (eps * 0.4 / 1.5));
            }
        }
        const int xi = xi0_spread_shape(std::abs(eta), eps_prime, ell, m_slope, big_m);
        const auto out = spread_segments(gamma, eta, xi);
        REQUIRE(!out.empty());

        // sample Str(X, (0, eta)) and check density
        for (const Vec2& xp : x_pts)
            for (int k = 0; k <= 8; ++k) {
                const Vec2 target = xp + Vec2{0.0, eta * (2.0 * k / 8.0 - 1.0)};
                double best = std::numeric_limits<double>::infinity();
                for (const Segment& s : out)
                    best = std::min(best, torus::geom::dist_point_segment(target, s.p, s.q));
                CHECK(best <= eps + eps_prime + 1e-9);
            }
        for (const Segment& s : out) {
            CHECK(std::abs((s.q.y - s.p.y) / (s.q.x - s.p.x)) >= m_slope);
            CHECK(s.length() >= std::abs(eta) * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("verify_stages: small square run end to end") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {0, 1}}), 1.0);
    const double a = recipe.admissible_a(0);
    const FundamentalDomain dom = torus::dynamics::make_domain(60);
    const StageTrace trace = verify_stages(recipe, a, 0.0, dom);

    CHECK(trace.merged_vertical);
    REQUIRE(!trace.rows.empty());
    CHECK(trace.rows.front().k_index == 0);
    CHECK(trace.rows.back().k_index == 2 * 2 + 1);

    for (const Verdict& v : trace.verdicts) {
        INFO(v.name, " value=", v.value, " bound=", v.bound, " slack=", v.slack);
        CHECK(v.status != Verdict::Status::violated);
    }
    CHECK(trace.final_hausdorff <= 2.0 + trace.final_slack);
    CHECK(trace.final_diameter > 6.0 * recipe.r + 6.0);
    CHECK(trace.witness.ok());
}

TEST_CASE("verify_stages: segment targets, both orientations") {
    const FundamentalDomain dom = torus::dynamics::make_domain(48);
    for (const auto& gens : {q_gens({{1, 0}}), q_gens({{0, 1}})}) {
        const SpreaderRecipe recipe = build_spreader(gens, 0.5);
        const StageTrace trace = verify_stages(recipe, recipe.admissible_a(1), -0.125, dom);
        CHECK(trace.rows.back().k_index == 3);  // l = 1
        for (const Verdict& v : trace.verdicts) {
            INFO(v.name, " value=", v.value, " bound=", v.bound, " slack=", v.slack);
            CHECK(v.status != Verdict::Status::violated);
        }
        CHECK(trace.final_diameter > 6.0 * recipe.r + 6.0);
        CHECK(trace.witness.ok());
    }
}

TEST_CASE("verify_stages rejects inadmissible translations") {
    const SpreaderRecipe recipe = build_spreader(q_gens({{1, 0}, {0, 1}}), 1.0);
    const FundamentalDomain dom = torus::dynamics::make_domain(10);
    const double bad = recipe.admissible_a(0) + 0.31 / recipe.xi;
    CHECK_THROWS_AS(verify_stages(recipe, bad, 0.0, dom), std::invalid_argument);
}

TEST_CASE("commuting family: equivariance, admissibility, convergence") {
    const auto fam = build_commuting_family(1, 2, q_gens({{1, 0}, {0, 1}}), 1.0);
    CHECK(fam.accuracy_j == 46);  // 2q + 3 ell q + 9 ell q^2 at ell=1, q=2

    const double defect = torus::dynamics::equivariance_check(
        torus::dynamics::as_fn(fam.h), {{0.5, 0.0}, {0.0, 1.0}}, 200);
    CHECK(defect <= 1e-9);

    REQUIRE(fam.thetas.size() == 3);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fam.thetas.size(); ++i) {
        const double err = (fam.thetas[i] - Vec2{0.5, 0.0}).norm();
        CHECK(err < prev);
        prev = err;
        // t_i alpha_i lands in the admissible set
        const double a = fam.thetas[i].x * 2.0 * fam.iterate_counts[i];
        CHECK(fam.recipe.is_admissible(a, 1e-9));
    }
    CHECK_THROWS_AS(build_commuting_family(2, 4, q_gens({{1, 0}}), 1.0), std::invalid_argument);
}
