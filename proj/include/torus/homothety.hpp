#pragma once

// Homothety-type normalization (quotient by positive scalings and
// translations), certification of r-large approximates, and the quantitative
// stability bounds for perturbations and invertible linear maps.

#include "torus/geom.hpp"

namespace torus::homothety {

using geom::ConvexPolygon;
using geom::PointCloud;
using geom::Vec2;

// A compact shape rescaled to diameter 1 and recentered so its centroid sits
// at the origin. anchor keeps the original centroid.
struct HomothetyRep {
    PointCloud shape;
    Vec2 anchor;
    double original_diameter = 0.0;
};

// Rescale by 1/diam and recenter; invariant under translations and positive
// scalings of the input. Throws on zero-diameter input.
HomothetyRep normalize(const PointCloud& k);

// Same, with the polygon sampled (boundary + interior) at the given step
// before normalization.
HomothetyRep normalize(const ConvexPolygon& poly, double sample_step);

enum class LargeApproxStatus { ok, too_small, shape_mismatch };

// Certificate that a cloud K is an r-large approximate of a homothety type:
// diam(K) > r and d_H(K / diam(K), rep + t) + slack < 1/r for the found t.
struct LargeApproxWitness {
    double r = 0.0;
    double scale = 0.0;          // diam(K)
    Vec2 translation;            // shift applied to the diameter-1 representative
    double achieved_gap = 0.0;   // best d_H found over translations
    double sampling_slack = 0.0; // cloud + target discretization + search optimality
};

struct LargeApproxResult {
    LargeApproxStatus status = LargeApproxStatus::shape_mismatch;
    LargeApproxWitness witness;  // gap fields are filled on shape_mismatch too

    bool ok() const { return status == LargeApproxStatus::ok; }
};

// Best translation of the representative against a normalized cloud:
// centroid alignment, then compass descent with steps step0, step0/2.5,
// step0/5. The final step bounds the optimality gap (d_H is 1-Lipschitz in
// the translation).
struct TranslationFit {
    Vec2 translation;
    double gap = 0.0;
    double search_step = 0.0;  // final descent step
};
TranslationFit best_translation_fit(const PointCloud& normalized, const HomothetyRep& target,
                                    double step0);

// The translation search fixes the supplied representative (no rotation or
// reflection search): centroid alignment, then compass descent on a grid
// refined from (1/r)/4 down to (1/r)/20. The final step size is charged to
// sampling_slack (d_H is 1-Lipschitz in the translation).
LargeApproxResult large_approx_check(const PointCloud& k, const HomothetyRep& target, double r);

// s0 = 2*d0 + r + 3*d0*r. For s >= s0: any s-large approximate stays an
// r-large approximate after a perturbation of Hausdorff size < d0.
double perturbation_bound(double r, double d0);

// s0 = r * |A^-1| * max{3 |A|, 1}. For s >= s0: A maps s-large approximates
// of a type to r-large approximates of the image type.
double linear_map_bound(double r, double a, double b, double c, double d);
double linear_map_bound(double r, const geom::Mat2Z& m);

}  // namespace torus::homothety
