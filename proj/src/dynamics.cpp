#include "torus/dynamics.hpp"

#include "torus/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace torus::dynamics {

double phi(int xi, double x) {
    if (xi < 1) throw std::invalid_argument("phi: xi must be >= 1");
    if (!(std::abs(x) <= 1099511627776.0))  // 2^40: keep breakpoint arithmetic faithful
        throw std::invalid_argument("phi: |x| exceeds 2^40");
    const double t = 2.0 * xi * x;
    const double zf = std::floor(t);
    const double frac = t - zf;  // in [0, 1)
    const auto z = static_cast<long long>(zf);
    const double wave = 2.0 * frac - 1.0;  // 4 xi x - 2z - 1
    return (z & 1LL) ? wave : -wave;       // (-1)^(z+1) factor
}

Vec2 apply_generator(const Generator& g, const Vec2& p) {
    if (const auto* t = std::get_if<Translation>(&g)) return p + t->theta;
    if (const auto* l = std::get_if<Linear>(&g)) return l->m.apply(p);
    const auto& s = std::get<Shear>(g);
    return {p.x, p.y + s.eta * phi(s.xi, p.x)};
}

Generator generator_inverse(const Generator& g) {
    if (const auto* t = std::get_if<Translation>(&g)) return Translation{-t->theta};
    if (const auto* l = std::get_if<Linear>(&g)) return Linear{l->m.inverse()};
    const auto& s = std::get<Shear>(g);
    return Shear{-s.eta, s.xi};
}

bool is_identity(const Generator& g) {
    if (const auto* t = std::get_if<Translation>(&g)) return t->theta.x == 0 && t->theta.y == 0;
    if (const auto* l = std::get_if<Linear>(&g)) return l->m.is_identity();
    return std::get<Shear>(g).eta == 0.0;
}

double lipschitz(const Generator& g) {
    if (std::get_if<Translation>(&g)) return 1.0;
    if (const auto* l = std::get_if<Linear>(&g)) return geom::op_norm(l->m);
    const auto& s = std::get<Shear>(g);
    const double c = 4.0 * std::abs(s.eta) * s.xi;  // max |phi_xi'| times eta
    return geom::op_norm(1.0, 0.0, c, 1.0);
}

namespace {

void validate(const Generator& g) {
    if (const auto* t = std::get_if<Translation>(&g)) {
        if (!t->theta.finite()) throw std::invalid_argument("LiftWord: non-finite translation");
        return;
    }
    if (const auto* l = std::get_if<Linear>(&g)) {
        if (!l->m.unimodular()) throw std::invalid_argument("LiftWord: linear part must have det +-1");
        return;
    }
    const auto& s = std::get<Shear>(g);
    if (s.eta == 0.0 || !std::isfinite(s.eta))
        throw std::invalid_argument("LiftWord: shear requires nonzero finite eta");
    if (s.xi < 1) throw std::invalid_argument("LiftWord: shear requires xi >= 1");
}

// Appends g, merging with the tail where the group laws allow it.
void push_simplified(std::vector<Generator>& w, const Generator& g) {
    if (is_identity(g)) return;
    if (!w.empty()) {
        Generator& back = w.back();
        if (auto* tb = std::get_if<Translation>(&back)) {
            if (const auto* tg = std::get_if<Translation>(&g)) {
                tb->theta = tb->theta + tg->theta;
                if (is_identity(back)) w.pop_back();
                return;
            }
        } else if (auto* lb = std::get_if<Linear>(&back)) {
            if (const auto* lg = std::get_if<Linear>(&g)) {
                lb->m = lb->m.mul(lg->m);
                if (is_identity(back)) w.pop_back();
                return;
            }
        } else {
            auto& sb = std::get<Shear>(back);
            if (const auto* sg = std::get_if<Shear>(&g)) {
                if (sg->xi == sb.xi) {
                    sb.eta += sg->eta;
                    if (is_identity(back)) w.pop_back();
                    return;
                }
            }
        }
    }
    w.push_back(g);
}

}  // namespace

LiftWord make_word(std::vector<Generator> gens) {
    for (const Generator& g : gens) validate(g);
    return LiftWord{std::move(gens)};
}

Vec2 apply(const LiftWord& w, const Vec2& p) {
    Vec2 out = p;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) out = apply_generator(*it, out);
    return out;
}

LiftWord compose(const LiftWord& f, const LiftWord& g) {
    std::vector<Generator> out;
    out.reserve(f.word.size() + g.word.size());
    for (const Generator& gen : f.word) push_simplified(out, gen);
    for (const Generator& gen : g.word) push_simplified(out, gen);
    return LiftWord{std::move(out)};
}

LiftWord inverse(const LiftWord& f) {
    std::vector<Generator> out;
    out.reserve(f.word.size());
    for (auto it = f.word.rbegin(); it != f.word.rend(); ++it)
        push_simplified(out, generator_inverse(*it));
    return LiftWord{std::move(out)};
}

Mat2Z monodromy(const LiftWord& f) {
    Mat2Z m = Mat2Z::identity();
    for (const Generator& g : f.word)
        if (const auto* l = std::get_if<Linear>(&g)) m = m.mul(l->m);
    return m;
}

double lipschitz_bound(const LiftWord& f) {
    double out = 1.0;
    for (const Generator& g : f.word) out *= lipschitz(g);
    return out;
}

Vec2 apply(const RescaledLift& m, const Vec2& p) {
    const Vec2 up{p.x * m.q, p.y};
    const Vec2 mid = apply(m.base, up);
    return {mid.x / m.q, mid.y};
}

RescaledLift cq_conjugate(const LiftWord& base, int q) {
    if (q < 1) throw std::invalid_argument("cq_conjugate: q must be >= 1");
    const double defect = equivariance_check(as_fn(base), {{1, 0}, {0, 1}}, 256);
    if (defect > 1e-9)
        throw std::invalid_argument("cq_conjugate: base does not commute with Z^2 translations");
    return RescaledLift{base, q};
}

MapFn as_fn(const LiftWord& w) {
    return [w](const Vec2& p) { return apply(w, p); };
}

MapFn as_fn(const RescaledLift& m) {
    return [m](const Vec2& p) { return apply(m, p); };
}

FundamentalDomain make_domain(int resolution, Vec2 basepoint) {
    if (resolution < 1) throw std::invalid_argument("make_domain: resolution must be >= 1");
    if (basepoint.x < 0 || basepoint.x > 1 || basepoint.y < 0 || basepoint.y > 1)
        throw std::invalid_argument("make_domain: basepoint outside [0,1]^2");
    const int n = resolution;
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n + 1) * (n + 1) + 1);
    bool has_base = false;
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix) {
            const Vec2 p{static_cast<double>(ix) / n, static_cast<double>(iy) / n};
            if (p == basepoint) has_base = true;
            pts.push_back(p);
        }
    if (!has_base) pts.push_back(basepoint);
    FundamentalDomain dom;
    dom.resolution = n;
    dom.cloud = PointCloud(std::move(pts), 1.0 / n);
    dom.basepoint = basepoint;
    return dom;
}

PointCloud apply_cloud(const MapFn& map, const PointCloud& cloud, double lipschitz_step) {
    std::vector<Vec2> out(cloud.size());
    par::parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = map(cloud.pts[i]);
    });
    return PointCloud(std::move(out), cloud.resolution_hint * lipschitz_step);
}

std::vector<PointCloud> iterate_domain(const MapFn& map, int n, const FundamentalDomain& dom,
                                       double lipschitz_step) {
    if (n < 1) throw std::invalid_argument("iterate_domain: n must be >= 1");
    std::vector<PointCloud> out;
    out.reserve(n);
    PointCloud current = dom.cloud;
    for (int k = 0; k < n; ++k) {
        current = apply_cloud(map, current, lipschitz_step);
        out.push_back(current);
    }
    return out;
}

std::vector<PointCloud> iterate_domain(const LiftWord& w, int n, const FundamentalDomain& dom) {
    return iterate_domain(as_fn(w), n, dom, lipschitz_bound(w));
}

std::vector<PointCloud> iterate_domain(const RescaledLift& m, int n, const FundamentalDomain& dom) {
    return iterate_domain(as_fn(m), n, dom, lipschitz_bound(m.base) * m.q);
}

double equivariance_check(const MapFn& map, const std::vector<Vec2>& lattice, int samples,
                          std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("equivariance_check: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Vec2 p{coord(rng), coord(rng)};
        const Vec2 fp = map(p);
        for (const Vec2& z : lattice) {
            const Vec2 shifted = map(p + z);
            worst = std::max(worst, (shifted - fp - z).norm());
        }
    }
    return worst;
}

}  // namespace torus::dynamics
