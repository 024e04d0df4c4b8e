#pragma once

// Finite-scale estimators for rotation sets, generalized rotation sets,
// deviation and rigidity profiles, and a weak-spreading probe.

#include "torus/dynamics.hpp"
#include "torus/geom.hpp"

#include <vector>

namespace torus::rotation {

using dynamics::FundamentalDomain;
using dynamics::MapFn;
using geom::ConvexPolygon;
using geom::PointCloud;
using geom::Vec2;

struct RotationEstimate {
    long n = 0;
    ConvexPolygon hull;  // hull of f^n(D) / n
    double diameter = 0.0;
};

RotationEstimate rotation_set_estimate(const MapFn& map, long n, const FundamentalDomain& dom);

// Per-term normalized clouds (f^{n_i}(D) - f^{n_i}(x0)) / diam(f^{n_i}(D)).
// diam_trace lets the caller judge the divergence requirement; cauchy_gap is
// the max pairwise Hausdorff distance among the last (up to) three terms.
struct GeneralizedRotEstimate {
    std::vector<long> subsequence;
    std::vector<PointCloud> normalized;
    std::vector<double> diam_trace;
    double cauchy_gap = 0.0;
};

GeneralizedRotEstimate generalized_rot_estimate(const MapFn& map,
                                                const std::vector<long>& subsequence,
                                                const FundamentalDomain& dom);

struct DeviationProfile {
    Vec2 direction;
    Vec2 rho;
    std::vector<double> per_n;  // max_x |<f^n(x) - x - n rho, v>|
};

DeviationProfile deviation_profile(const MapFn& map, const Vec2& v, const Vec2& rho, long n_max,
                                   const FundamentalDomain& dom);

// Per n: max over sampled torus points of the quotient-metric distance
// between f^n(x) and x (lift displacement reduced mod Z^2).
std::vector<double> rigidity_profile(const MapFn& map, long n_max, const FundamentalDomain& dom);

struct SpreadProbeResult {
    bool found = false;
    long n = 0;
    Vec2 center;
};

// First n <= n_max with a radius-R ball (centers searched on a grid over the
// image's bounding box) in which f^n(U) is eps-dense. Not-found is
// inconclusive, never a disproof.
SpreadProbeResult weak_spreading_probe(const MapFn& map, const PointCloud& u, double eps,
                                       double radius, long n_max);

}  // namespace torus::rotation
