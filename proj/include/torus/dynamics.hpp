#pragma once

// Lifted torus maps as composition words of plane homeomorphism generators:
// rigid translations, unimodular linear maps, and triangle-wave shears
// J_{eta,xi}(x, y) = (x, y + eta * phi_xi(x)). Words compose, invert, iterate
// sampled domains, and can be rescaled by conjugation with C_q = diag(1/q, 1).

#include "torus/geom.hpp"

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace torus::dynamics {

using geom::Mat2Z;
using geom::PointCloud;
using geom::Vec2;

// Triangle wave of period 1/xi with values in [-1, 1], evaluated by range
// reduction with explicit parity (breakpoints at z/(2 xi) belong to the
// left-closed piece). Arguments with |x| > 2^40 are rejected.
double phi(int xi, double x);

struct Translation {
    Vec2 theta;
};
struct Linear {
    Mat2Z m;  // |det| = 1
};
struct Shear {
    double eta;  // != 0
    int xi;      // >= 1
};

using Generator = std::variant<Translation, Linear, Shear>;

// Named distinctly from apply(): a bare std::variant argument would make an
// unqualified apply(...) call ambiguous with std::apply through ADL.
Vec2 apply_generator(const Generator& g, const Vec2& p);
Generator generator_inverse(const Generator& g);
bool is_identity(const Generator& g);

// Lipschitz constant of the generator as a plane map.
double lipschitz(const Generator& g);

// Composition word; word[0] is the leftmost factor, i.e. applied last.
struct LiftWord {
    std::vector<Generator> word;

    std::size_t size() const { return word.size(); }
    bool empty() const { return word.empty(); }
};

// Validates generator invariants (unimodular Linear, Shear eta != 0, xi >= 1).
LiftWord make_word(std::vector<Generator> gens);

Vec2 apply(const LiftWord& w, const Vec2& p);

// Concatenation with peephole simplification: adjacent translations merge,
// adjacent linears multiply, adjacent shears with equal xi merge; identity
// factors are dropped.
LiftWord compose(const LiftWord& f, const LiftWord& g);

LiftWord inverse(const LiftWord& f);

// Product of the linear parts: f(p + z) = f(p) + monodromy(f) z for z in Z^2.
Mat2Z monodromy(const LiftWord& f);

// Product of per-generator Lipschitz constants (upper bound for the word).
double lipschitz_bound(const LiftWord& f);

// C_q base C_q^{-1} with C_q = diag(1/q, 1); commutes with translation by
// (z1/q, z2). Kept as a wrapper because C_q is not unimodular.
struct RescaledLift {
    LiftWord base;
    int q = 1;
};

Vec2 apply(const RescaledLift& m, const Vec2& p);

// Constructs the rescaled lift after checking that base commutes with Z^2
// translations (defect <= 1e-9 on sampled points); throws otherwise.
RescaledLift cq_conjugate(const LiftWord& base, int q);

// Type-erased plane map for estimators that accept any of the above.
using MapFn = std::function<Vec2(const Vec2&)>;

MapFn as_fn(const LiftWord& w);
MapFn as_fn(const RescaledLift& m);

// [0,1]^2 sampled on a grid of `resolution` cells per side (boundary
// included); the basepoint is guaranteed to be a cloud point.
struct FundamentalDomain {
    int resolution = 1;
    PointCloud cloud;
    Vec2 basepoint;
};

FundamentalDomain make_domain(int resolution, Vec2 basepoint = {0.5, 0.5});

// [f(D), f^2(D), ..., f^n(D)], each step applying the map to the previous
// cloud; resolution hints are propagated by the per-step Lipschitz factor.
std::vector<PointCloud> iterate_domain(const MapFn& map, int n, const FundamentalDomain& dom,
                                       double lipschitz_step);
std::vector<PointCloud> iterate_domain(const LiftWord& w, int n, const FundamentalDomain& dom);
std::vector<PointCloud> iterate_domain(const RescaledLift& m, int n, const FundamentalDomain& dom);

// Max over sampled points p and lattice vectors z of |map(p+z) - map(p) - z|.
double equivariance_check(const MapFn& map, const std::vector<Vec2>& lattice, int samples,
                          std::uint64_t seed = 0x5eed0f5eedceULL);

PointCloud apply_cloud(const MapFn& map, const PointCloud& cloud, double lipschitz_step);

}  // namespace torus::dynamics
