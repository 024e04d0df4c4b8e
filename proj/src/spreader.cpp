#include "torus/spreader.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace torus::spreader {

using dynamics::Generator;
using dynamics::LiftWord;
using dynamics::Linear;
using dynamics::Shear;
using dynamics::Translation;
using geom::BigInt;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool upper_half(const Vec2Q& v) { return v.y > 0 || (v.y == 0 && v.x > 0); }

std::int64_t to_i64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::invalid_argument("spreader: primitive direction exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

}  // namespace

StageData derive_stage(const Vec2Q& v) {
    if (v.is_zero()) throw std::invalid_argument("derive_stage: zero generator");
    const Rat hx = v.x / 2;
    const Rat hy = v.y / 2;
    const BigInt dx = denominator(hx);
    const BigInt dy = denominator(hy);
    const BigInt common = lcm(dx, dy);
    const BigInt ax = numerator(hx) * (common / dx);
    const BigInt ay = numerator(hy) * (common / dy);
    const BigInt g = gcd(abs(ax), abs(ay));
    BigInt wx = ax / g;
    BigInt wy = ay / g;
    Rat eta(g, common);
    if (!(wy > 0 || (wy == 0 && wx > 0))) {
        wx = -wx;
        wy = -wy;
        eta = -eta;
    }
    StageData out;
    out.a_mat = geom::primitive_completion(to_i64(wx), to_i64(wy));
    out.eta = eta;
    out.v = v;
    // exact identity A(0, eta) = v/2
    const Vec2Q check = out.a_mat.apply(Vec2Q{Rat(0), eta});
    if (!(check.x == hx && check.y == hy))
        throw std::logic_error("derive_stage: stage identity failed");
    return out;
}

SlopeBounds slope_bounds(const Mat2Z& a, double delta, double delta_prime) {
    const double half_pi = kPi / 2.0;
    if (!(delta > 0 && delta < half_pi) || !(delta_prime > 0 && delta_prime < half_pi))
        throw std::invalid_argument("slope_bounds: delta, delta' must lie in (0, pi/2)");
    if (!a.unimodular()) throw std::invalid_argument("slope_bounds: matrix must be unimodular");

    const Vec2 v = a.apply(Vec2{0.0, 1.0});
    const double theta_v = std::atan2(v.y, v.x);
    const Mat2Z inv = a.inverse();

    auto inv_slope_abs = [&](double theta) {
        const Vec2 u{std::cos(theta), std::sin(theta)};
        const Vec2 w = inv.apply(u);
        return std::abs(w.y / w.x);
    };
    // slope(A^{-1} u(theta)) is Mobius in tan(theta) with one-signed derivative
    // between its poles at theta_v mod pi, so the max over the closed arc at
    // distance >= delta from +-v sits at the arc endpoints.
    SlopeBounds out;
    out.max_slope = std::max(inv_slope_abs(theta_v + delta), inv_slope_abs(theta_v - delta));

    auto cone_gap = [&](double psi, double side) {
        const double theta = half_pi + side * psi;
        const Vec2 u{std::cos(theta), std::sin(theta)};
        return geom::projective_distance(a.apply(u), v) - delta_prime;
    };
    double m_needed = 0.0;
    for (double side : {-1.0, 1.0}) {
        const int grid = 4096;
        int hit = -1;
        for (int k = 1; k <= grid; ++k) {
            if (cone_gap(half_pi * k / grid, side) >= 0.0) {
                hit = k;
                break;
            }
        }
        if (hit < 0) continue;  // whole side stays inside the delta' cone
        double lo = half_pi * (hit - 1) / grid;
        double hi = half_pi * hit / grid;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (cone_gap(mid, side) < 0.0 ? lo : hi) = mid;
        }
        // angle-from-vertical lo is still inside the cone; slopes >= cot(lo)
        // keep this side within delta'
        if (lo > 0.0) m_needed = std::max(m_needed, 1.0 / std::tan(lo));
        else m_needed = std::numeric_limits<double>::infinity();
    }
    out.min_slope = m_needed;
    return out;
}

int xi0_spread_shape(double eta_abs, double eps_prime, double ell, double m_slope,
                     double big_m_slope) {
    if (!(eta_abs > 0) || !(eps_prime > 0) || !(ell > 0) || !(m_slope > 0) || !(big_m_slope > 0))
        throw std::invalid_argument("xi0_spread_shape: all inputs must be positive");
    const double d = std::min(ell, eps_prime) * std::cos(std::atan(big_m_slope));
    const double val = 1.0 / d + (big_m_slope + m_slope) / (2.0 * eta_abs);
    return std::max(1, static_cast<int>(std::ceil(val - 1e-9)));
}

int xi0_corollary(double eta_abs, const Mat2Z& a, double ell, double eps_prime, double delta,
                  double delta_prime) {
    const SlopeBounds sb = slope_bounds(a, delta, delta_prime);
    const double norm_a = geom::op_norm(a);
    return xi0_spread_shape(eta_abs, eps_prime / norm_a, ell / norm_a,
                            std::max(sb.min_slope, 1e-9), std::max(sb.max_slope, 1e-9));
}

bool SpreaderRecipe::is_admissible(double a, double tol) const {
    const double base = 1.0 / (2.0 * xi);
    const double k = std::round((a - base) * xi);
    return std::abs(a - (base + k / xi)) <= tol;
}

namespace {

double min_pairwise_direction_gap(const std::vector<Vec2Q>& dirs) {
    double best = kPi;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            best = std::min(best,
                            geom::projective_distance(dirs[i].to_double(), dirs[j].to_double()));
    return best;
}

// delta = half the minimal pairwise direction distance; pi/4 fallback when
// fewer than two distinct directions remain.
double half_min_gap(const std::vector<Vec2Q>& dirs) {
    if (dirs.size() < 2) return kPi / 4.0;
    return 0.5 * min_pairwise_direction_gap(dirs);
}

int xi0_over_stages(const std::vector<StageData>& stages, double lambda, double eps_prime,
                    double delta, double delta_prime) {
    int xi0 = 1;
    for (const StageData& s : stages)
        xi0 = std::max(xi0, xi0_corollary(std::abs(s.eta_d()), s.a_mat, lambda, eps_prime, delta,
                                          delta_prime));
    return xi0;
}

}  // namespace

SpreaderRecipe build_spreader(const std::vector<Vec2Q>& generators, double r, int xi_override) {
    if (generators.empty()) throw std::invalid_argument("build_spreader: no generators");
    if (!(r > 0)) throw std::invalid_argument("build_spreader: r must be positive");

    // merge collinear generators; Zon is unchanged and stages need pairwise
    // distinct directions
    std::vector<Vec2Q> merged;
    for (const Vec2Q& g : generators) {
        if (g.is_zero()) throw std::invalid_argument("build_spreader: zero generator");
        const Vec2Q gg = upper_half(g) ? g : -g;
        bool fused = false;
        for (Vec2Q& m : merged)
            if (m.cross(gg) == 0) {
                m = m + gg;
                fused = true;
                break;
            }
        if (!fused) merged.push_back(gg);
    }
    // a vertical generator goes last so the merged-shear reduction applies
    for (std::size_t i = 0; i < merged.size(); ++i)
        if (merged[i].x == 0 && i + 1 != merged.size())
            std::rotate(merged.begin() + i, merged.begin() + i + 1, merged.end());

    // least integer scaling with diam(Zon) > 6r + 10
    const std::vector<Vec2Q> verts = geom::zonogon_vertices(merged);
    double diam = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            diam = std::max(diam, geom::dist(verts[i].to_double(), verts[j].to_double()));
    const double need = 6.0 * r + 10.0;
    long scale_k = static_cast<long>(std::floor(need / diam)) + 1;
    while (scale_k * diam <= need) ++scale_k;

    SpreaderParams params;
    params.scale_k = scale_k;
    for (const Vec2Q& g : merged) params.generators.push_back(g * Rat(scale_k));

    const std::size_t l = params.generators.size();
    for (std::size_t i = 0; i < l; ++i) {
        StageData s = derive_stage(params.generators[i]);
        s.index = static_cast<int>(i);
        params.stages.push_back(std::move(s));
    }
    StageData last = derive_stage(Vec2Q{Rat(0), Rat(1)});  // v_l = (0,1): A = Id, eta = 1/2
    last.index = static_cast<int>(l);
    params.stages.push_back(std::move(last));

    double lambda = std::numeric_limits<double>::infinity();
    for (const StageData& s : params.stages) {
        const double inv_norm = geom::op_norm(s.a_mat.inverse());
        lambda = std::min(lambda, std::abs(s.eta_d()) / inv_norm);
    }
    params.lambda = lambda;
    params.eps_prime = 1.0 / (2.0 * static_cast<double>(l));

    // distinct direction set over v_0 .. v_l (exact collinearity dedup)
    std::vector<Vec2Q> dirs;
    auto add_dir = [&](const Vec2Q& v) {
        const Vec2Q vv = upper_half(v) ? v : -v;
        for (const Vec2Q& d : dirs)
            if (d.cross(vv) == 0) return;
        dirs.push_back(vv);
    };
    for (const StageData& s : params.stages) add_dir(s.v);
    params.delta = half_min_gap(dirs);
    params.delta_prime = params.delta;

    params.xi0 = xi0_over_stages(params.stages, lambda, params.eps_prime, params.delta,
                                 params.delta_prime);
    // the v_1..v_l convention for delta, flagged when it changes xi0
    if (dirs.size() >= 2) {
        std::vector<Vec2Q> dirs_no_v0(dirs.begin() + 1, dirs.begin() + dirs.size());
        const double delta_alt = half_min_gap(dirs_no_v0);
        const int xi0_alt = xi0_over_stages(params.stages, lambda, params.eps_prime, delta_alt,
                                            delta_alt);
        params.delta_convention_differs = (xi0_alt != params.xi0);
    }

    SpreaderRecipe recipe;
    recipe.r = r;
    if (xi_override != 0 && xi_override < params.xi0)
        throw std::invalid_argument("build_spreader: xi override below xi0");
    recipe.xi = xi_override != 0 ? xi_override : params.xi0;
    recipe.vertical_last = params.generators[l - 1].x == 0;

    std::vector<Generator> fgens;
    for (const StageData& s : params.stages) {
        std::vector<Generator> block;
        if (!s.a_mat.is_identity()) block.push_back(Linear{s.a_mat});
        block.push_back(Shear{s.eta_d(), recipe.xi});
        if (!s.a_mat.is_identity()) block.push_back(Linear{s.a_mat.inverse()});
        LiftWord bw = dynamics::make_word(block);
        LiftWord acc = dynamics::make_word(fgens);
        fgens = dynamics::compose(acc, bw).word;
    }
    recipe.f_word = dynamics::make_word(fgens);
    recipe.params = std::move(params);
    return recipe;
}

Verdict make_verdict(std::string name, double value, double bound, double slack,
                     bool larger_is_better) {
    Verdict v;
    v.name = std::move(name);
    v.value = value;
    v.bound = bound;
    v.slack = slack;
    if (larger_is_better) {
        if (value > bound) v.status = Verdict::Status::pass;
        else if (value > bound - slack) v.status = Verdict::Status::inconclusive;
        else v.status = Verdict::Status::violated;
    } else {
        if (value <= bound + 1e-9) v.status = Verdict::Status::pass;
        else if (value <= bound + slack) v.status = Verdict::Status::inconclusive;
        else v.status = Verdict::Status::violated;
    }
    return v;
}

std::vector<LiftWord> conjugated_factors(const SpreaderRecipe& recipe, double a, double b) {
    const auto& st = recipe.params.stages;
    const int l = static_cast<int>(st.size()) - 1;
    const int xi = recipe.xi;

    auto conj_shear = [&](const StageData& s, double sign) {
        std::vector<Generator> g;
        if (!s.a_mat.is_identity()) g.push_back(Linear{s.a_mat});
        g.push_back(Shear{sign * s.eta_d(), xi});
        if (!s.a_mat.is_identity()) g.push_back(Linear{s.a_mat.inverse()});
        return dynamics::make_word(std::move(g));
    };

    std::vector<LiftWord> out;
    if (recipe.vertical_last) {
        for (int i = 0; i <= l - 2; ++i) out.push_back(conj_shear(st[i], -1.0));
        // J_{eta,xi} R_(a,b) = R_(a,b) J_{-eta,xi} for admissible a, so the
        // three middle factors collapse to R_(a,b) J_{-2 eta_{l-1} - 1, xi}
        const Rat merged_eta = Rat(-2) * st[l - 1].eta - 1;
        out.push_back(dynamics::make_word(
            {Translation{{a, b}}, Shear{static_cast<double>(merged_eta), xi}}));
        for (int i = l - 2; i >= 0; --i) out.push_back(conj_shear(st[i], +1.0));
    } else {
        for (int i = 0; i <= l - 1; ++i) out.push_back(conj_shear(st[i], -1.0));
        out.push_back(dynamics::make_word({Translation{{a, b}}, Shear{-1.0, xi}}));
        for (int i = l - 1; i >= 0; --i) out.push_back(conj_shear(st[i], +1.0));
    }
    return out;
}

namespace {

ConvexPolygon polygon_from_zonogon(const std::vector<Vec2Q>& gens, const Vec2& center) {
    const std::vector<Vec2Q> verts = geom::zonogon_vertices(gens);
    ConvexPolygon poly;
    poly.vertices.reserve(verts.size());
    for (const Vec2Q& v : verts) poly.vertices.push_back(v.to_double() + center);
    poly.degenerate = verts.size() == 2;
    poly.point_symmetric = true;
    return poly;
}

}  // namespace

std::vector<ConvexPolygon> stage_polygons(const SpreaderRecipe& recipe, double a, double b) {
    const std::vector<Vec2Q>& gens = recipe.params.generators;
    const int l = static_cast<int>(gens.size());
    const Vec2 c0{0.5, 0.5};
    const Vec2 c1{0.5 + a, 0.5 + b};

    std::vector<ConvexPolygon> out;
    ConvexPolygon k0;
    k0.vertices = {c0};
    k0.degenerate = true;
    k0.point_symmetric = true;
    out.push_back(k0);

    for (int i = 1; i <= l; ++i) {
        std::vector<Vec2Q> half(gens.begin(), gens.begin() + i);
        for (Vec2Q& g : half) g = g * Rat(1, 2);
        out.push_back(polygon_from_zonogon(half, c0));
    }
    {
        ConvexPolygon shifted = out[l];
        for (Vec2& v : shifted.vertices) v = v + Vec2{a, b};
        out.push_back(shifted);  // K_{l+1}
    }
    for (int i = l + 2; i <= 2 * l + 1; ++i) {
        // halves v_0 .. v_{2l - i}, full v_{2l + 1 - i} .. v_{l-1}
        std::vector<Vec2Q> mix;
        for (int j = 0; j <= 2 * l - i; ++j) mix.push_back(gens[j] * Rat(1, 2));
        for (int j = 2 * l + 1 - i; j <= l - 1; ++j) mix.push_back(gens[j]);
        out.push_back(polygon_from_zonogon(mix, c1));
    }
    return out;
}

namespace {

// Covering estimate for the continuous image by the mapped grid cloud: the
// longest image of a grid edge bounds how far the image of a cell can stray
// from its sampled corners. Relies on the row-major (n+1) x (n+1) layout of
// the domain cloud (an appended basepoint at the end is ignored).
double grid_edge_covering(const PointCloud& cloud, int n) {
    const std::size_t side = static_cast<std::size_t>(n) + 1;
    if (cloud.size() < side * side) return geom::max_nn_spacing(cloud);
    double worst_sq = 0.0;
    for (std::size_t iy = 0; iy < side; ++iy)
        for (std::size_t ix = 0; ix < side; ++ix) {
            const std::size_t i = iy * side + ix;
            if (ix + 1 < side)
                worst_sq = std::max(worst_sq, geom::dist_sq(cloud.pts[i], cloud.pts[i + 1]));
            if (iy + 1 < side)
                worst_sq = std::max(worst_sq, geom::dist_sq(cloud.pts[i], cloud.pts[i + side]));
        }
    return std::sqrt(worst_sq);
}

}  // namespace

StageTrace verify_stages(const SpreaderRecipe& recipe, double a, double b,
                         const dynamics::FundamentalDomain& dom) {
    if (!recipe.is_admissible(a))
        throw std::invalid_argument("verify_stages: a is not in the admissible set 1/(2 xi) + (1/xi) Z");

    const int l = static_cast<int>(recipe.params.generators.size());
    const std::vector<LiftWord> factors = conjugated_factors(recipe, a, b);
    const std::vector<ConvexPolygon> kpolys = stage_polygons(recipe, a, b);

    std::vector<int> kidx;
    kidx.push_back(0);
    if (recipe.vertical_last) {
        for (int j = 1; j <= l - 1; ++j) kidx.push_back(j);
        for (int j = l + 2; j <= 2 * l + 1; ++j) kidx.push_back(j);
    } else {
        for (int j = 1; j <= 2 * l + 1; ++j) kidx.push_back(j);
    }

    StageTrace trace;
    trace.merged_vertical = recipe.vertical_last;

    PointCloud cloud = dom.cloud;
    for (std::size_t row = 0; row < kidx.size(); ++row) {
        if (row > 0) {
            const LiftWord& f = factors[row - 1];
            cloud = dynamics::apply_cloud(dynamics::as_fn(f), cloud, 1.0);
        }
        StageRow sr;
        sr.k_index = kidx[row];
        sr.k_poly = kpolys[kidx[row]];
        // stage slack charges the measured cell stretch (gaps between sampled
        // folds); the cloud itself keeps its nearest-neighbor spacing
        sr.cloud_hint = grid_edge_covering(cloud, dom.resolution);
        cloud.resolution_hint = geom::max_nn_spacing(cloud);
        sr.cloud = cloud;

        double worst = 0.0;
        for (const Vec2& p : cloud.pts) worst = std::max(worst, geom::dist_point_polygon(p, sr.k_poly));
        sr.d_to_k = worst;

        const double kd = geom::polygon_diameter(sr.k_poly);
        sr.k_sample_step = kd > 0 ? std::max(0.02, kd / 300.0) : 0.0;
        const PointCloud ksamp = kd > 0 ? geom::sample_polygon(sr.k_poly, sr.k_sample_step)
                                        : PointCloud(sr.k_poly.vertices, 0.0);
        sr.k_to_d = geom::directed_hausdorff(ksamp, cloud);

        const double bound = sr.k_index <= l ? 1.0 : 2.0;
        const double slack = 2.0 * sr.cloud_hint + sr.k_sample_step;
        trace.verdicts.push_back(make_verdict("stage_" + std::to_string(sr.k_index) + "_containment",
                                              sr.d_to_k, bound, slack));
        trace.rows.push_back(std::move(sr));
    }

    const StageRow& last = trace.rows.back();
    trace.final_hausdorff = std::max(last.d_to_k, last.k_to_d);
    trace.final_slack = 2.0 * last.cloud_hint + last.k_sample_step;
    trace.verdicts.push_back(
        make_verdict("final_hausdorff", trace.final_hausdorff, 2.0, trace.final_slack));

    trace.final_diameter = geom::diameter(last.cloud);
    trace.verdicts.push_back(make_verdict("final_diameter", trace.final_diameter,
                                          6.0 * recipe.r + 6.0, trace.final_slack, true));

    const double kd = geom::polygon_diameter(last.k_poly);
    const homothety::HomothetyRep target = homothety::normalize(last.k_poly, kd / 300.0);
    trace.witness = homothety::large_approx_check(last.cloud, target, recipe.r + 1.0);
    trace.verdicts.push_back(make_verdict(
        "large_approx_gap_r_plus_1", trace.witness.witness.achieved_gap +
                                         trace.witness.witness.sampling_slack,
        1.0 / (recipe.r + 1.0), 0.0));

    // factored product must reproduce F R_(a,b) F^{-1} pointwise; exact in
    // exact arithmetic, while both evaluation paths round through stage
    // slopes of order 4 eta xi. The floor sits orders of magnitude below any
    // algebra defect and above the worst observed rounding noise.
    {
        LiftWord conj = dynamics::compose(
            dynamics::compose(recipe.f_word,
                              dynamics::make_word({Translation{{a, b}}})),
            dynamics::inverse(recipe.f_word));
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        double worst = 0.0;
        double magnitude = 1.0;
        for (int i = 0; i < 20; ++i) {
            const Vec2 p{coord(rng), coord(rng)};
            Vec2 lhs = p;
            for (const LiftWord& f : factors) {
                lhs = dynamics::apply(f, lhs);
                magnitude = std::max({magnitude, std::abs(lhs.x), std::abs(lhs.y)});
            }
            const Vec2 rhs = dynamics::apply(conj, p);
            worst = std::max(worst, (lhs - rhs).norm());
        }
        trace.verdicts.push_back(make_verdict(
            "factorization_identity", worst, std::max(1e-7, 1e-9 * (1.0 + magnitude)), 0.0));
    }
    return trace;
}

CommutingFamily build_commuting_family(long p, long q, const std::vector<Vec2Q>& generators,
                                       double ell, int count) {
    if (q < 1) throw std::invalid_argument("build_commuting_family: q must be >= 1");
    if (std::gcd(std::abs(p), q) != 1)
        throw std::invalid_argument("build_commuting_family: p/q must be in lowest terms");
    if (!(ell > 0)) throw std::invalid_argument("build_commuting_family: ell must be positive");
    if (count < 1) throw std::invalid_argument("build_commuting_family: count must be >= 1");

    // chain: C_q image back through the linear-map bound, then the
    // Hausdorff-q perturbation from comparing D with [0,q] x [0,1]
    const double l1 = homothety::linear_map_bound(ell, 1.0 / q, 0.0, 0.0, 1.0);
    const double jd = homothety::perturbation_bound(l1, static_cast<double>(q));
    const int accuracy_j = static_cast<int>(std::ceil(jd - 1e-9));

    std::vector<Vec2Q> mapped;
    mapped.reserve(generators.size());
    for (const Vec2Q& g : generators) mapped.push_back({g.x * Rat(q), g.y});

    CommutingFamily fam;
    fam.accuracy_j = accuracy_j;
    fam.recipe = build_spreader(mapped, static_cast<double>(accuracy_j));
    fam.h = dynamics::cq_conjugate(fam.recipe.f_word, static_cast<int>(q));

    const long xi = fam.recipe.xi;
    for (int i = 1; i <= count; ++i) {
        const long t = i;
        const long s = p * t * xi;
        const double alpha_x = (2.0 * s + 1.0) / (2.0 * t * xi);
        fam.iterate_counts.push_back(t);
        fam.thetas.push_back({alpha_x / q, 0.0});
    }
    return fam;
}

std::vector<geom::Segment> spread_segments(const std::vector<geom::Segment>& gamma, double eta,
                                           int xi, int pieces_per_half_period) {
    if (eta == 0.0) throw std::invalid_argument("spread_segments: eta must be nonzero");
    if (xi < 1) throw std::invalid_argument("spread_segments: xi must be >= 1");
    if (pieces_per_half_period < 1)
        throw std::invalid_argument("spread_segments: granularity must be >= 1");

    auto shear = [&](const Vec2& p) { return Vec2{p.x, p.y + eta * dynamics::phi(xi, p.x)}; };

    std::vector<geom::Segment> out;
    for (const geom::Segment& seg : gamma) {
        Vec2 p = seg.p, q = seg.q;
        if (p.x > q.x) std::swap(p, q);
        if (p.x == q.x) continue;  // vertical: no half-period alignment
        const long z1 = static_cast<long>(std::ceil(2.0 * xi * p.x));
        const long z2 = static_cast<long>(std::floor(2.0 * xi * q.x));
        if (z2 <= z1) continue;  // shorter than a half period
        const Vec2 dirv = q - p;
        auto at_x = [&](double x) { return p + dirv * ((x - p.x) / dirv.x); };
        for (long z = z1; z < z2; ++z) {
            const double x0 = static_cast<double>(z) / (2.0 * xi);
            const double x1 = static_cast<double>(z + 1) / (2.0 * xi);
            for (int piece = 0; piece < pieces_per_half_period; ++piece) {
                const double a = x0 + (x1 - x0) * piece / pieces_per_half_period;
                const double b = x0 + (x1 - x0) * (piece + 1) / pieces_per_half_period;
                out.emplace_back(shear(at_x(a)), shear(at_x(b)));
            }
        }
    }
    return out;
}

}  // namespace torus::spreader
