#pragma once

// Construction of piecewise-affine spreading maps: stage derivation
// A_i(0, eta_i) = v_i / 2 over SL(2,Z), slope and xi_0 bounds for the
// shear-spreading step, assembly of the full spreading word F, stage-by-stage
// verification of the fundamental-domain / zonogon sequences (D_i) and (K_i),
// and the commuting-family construction h = C_q F C_q^{-1}.

#include "torus/dynamics.hpp"
#include "torus/geom.hpp"
#include "torus/homothety.hpp"

#include <string>
#include <vector>

namespace torus::spreader {

using geom::ConvexPolygon;
using geom::Mat2Z;
using geom::PointCloud;
using geom::Rat;
using geom::Vec2;
using geom::Vec2Q;

// One spreading stage: A in SL(2,Z) and rational eta with A(0, eta) = v/2
// exactly.
struct StageData {
    int index = 0;
    Mat2Z a_mat;
    Rat eta;
    Vec2Q v;

    double eta_d() const { return static_cast<double>(eta); }
};

// Writes v/2 = eta * w with w a positive-primitive integer vector and signed
// rational eta, then completes w to A in SL(2,Z).
StageData derive_stage(const Vec2Q& v);

// (M, m) for a stage matrix: M bounds |slope(A^{-1} u)| over directions u at
// angular distance >= delta from +-A(0,1); m is the least slope bound whose
// directions A maps within delta' of +-A(0,1). M comes from the endpoint
// evaluation of a Mobius-monotone slope function; m from a bracketing scan
// plus bisection.
struct SlopeBounds {
    double max_slope = 0.0;  // M
    double min_slope = 0.0;  // m
};
SlopeBounds slope_bounds(const Mat2Z& a, double delta, double delta_prime);

// ceil(1/d + (M + m) / (2 |eta|)) with d = min{ell, eps'} * cos(arctan(M)).
int xi0_spread_shape(double eta_abs, double eps_prime, double ell, double m_slope,
                     double big_m_slope);

// Conjugated version: segment lengths and density budget scale by 1/|A|, the
// slope box comes from slope_bounds(A, delta, delta').
int xi0_corollary(double eta_abs, const Mat2Z& a, double ell, double eps_prime, double delta,
                  double delta_prime);

struct SpreaderParams {
    std::vector<Vec2Q> generators;   // scaled v_0 .. v_{l-1}
    std::vector<StageData> stages;   // stages for v_0 .. v_{l-1} and v_l = (0,1)
    long scale_k = 1;                // integer scaling applied to the input generators
    double lambda = 0.0;             // min_i |A_i^{-1}|^{-1} |eta_i|
    double eps_prime = 0.0;          // 1/(2l)
    double delta = 0.0;              // half min pairwise direction distance (incl. v_0)
    double delta_prime = 0.0;        // = delta
    int xi0 = 1;
    // true when dropping v_0 from the direction set would change xi0
    bool delta_convention_differs = false;
};

struct SpreaderRecipe {
    SpreaderParams params;
    int xi = 1;                      // >= xi0
    dynamics::LiftWord f_word;       // (A_0 J_{eta_0,xi} A_0^{-1}) ... (A_l J_{eta_l,xi} A_l^{-1})
    double r = 0.0;
    bool vertical_last = false;      // v_{l-1} vertical: merged middle factor applies

    // the admissible horizontal translation set 1/(2 xi) + (1/xi) Z
    double admissible_a(long k) const { return 1.0 / (2.0 * xi) + static_cast<double>(k) / xi; }
    bool is_admissible(double a, double tol = 1e-12) const;
};

// Scales the generators by the least positive integer putting the zonogon
// diameter above 6r + 10, derives all stages, and assembles the word F.
// Collinear generators are merged; a vertical generator is moved to the last
// slot so the merged-shear reduction applies. xi_override, when nonzero,
// must be >= the computed xi0.
SpreaderRecipe build_spreader(const std::vector<Vec2Q>& generators, double r, int xi_override = 0);

struct Verdict {
    enum class Status { pass, inconclusive, violated };
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    Status status = Status::pass;
};

Verdict make_verdict(std::string name, double value, double bound, double slack,
                     bool larger_is_better = false);

struct StageRow {
    int k_index = 0;           // position in the K sequence (0 .. 2l+1)
    PointCloud cloud;          // D after this row's factor chain
    ConvexPolygon k_poly;
    double d_to_k = 0.0;       // sup over cloud of distance to the filled polygon
    double k_to_d = 0.0;       // sup over sampled polygon of distance to the cloud
    double cloud_hint = 0.0;   // empirical max nearest-neighbor spacing
    double k_sample_step = 0.0;
};

struct StageTrace {
    std::vector<StageRow> rows;  // rows[0] is D_0 against K_0
    double final_hausdorff = 0.0;
    double final_slack = 0.0;
    double final_diameter = 0.0;
    homothety::LargeApproxResult witness;  // large-approx check at r+1
    std::vector<Verdict> verdicts;
    bool merged_vertical = false;
};

// The factor list F_0 .. F_{2l} of the conjugation F R_(a,b) F^{-1}; when the
// last zonogon generator is vertical the three middle factors collapse to
// R_(a,b) J_{-2 eta_{l-1} - 1, xi}.
std::vector<dynamics::LiftWord> conjugated_factors(const SpreaderRecipe& recipe, double a,
                                                   double b);

// K sequence; k_index i corresponds to K_i (size 2l + 2).
std::vector<ConvexPolygon> stage_polygons(const SpreaderRecipe& recipe, double a, double b);

// Runs the D_i / K_i recursion from the sampled domain, reporting one-sided
// gaps per stage, the final Hausdorff distance, and the large-approx witness
// at r + 1. The translation a must lie in the admissible set within 1e-12.
StageTrace verify_stages(const SpreaderRecipe& recipe, double a, double b,
                         const dynamics::FundamentalDomain& dom);

struct CommutingFamily {
    dynamics::RescaledLift h;        // commutes with R_(1/q, 0)
    std::vector<Vec2> thetas;        // -> (p/q, 0)
    std::vector<long> iterate_counts;  // t_i with t_i * alpha_i admissible
    SpreaderRecipe recipe;           // spreader for the C_q^{-1}-image type
    int accuracy_j = 0;              // large-approx accuracy driving the recipe
};

// Lemma-two construction: spreader for the diag(q,1)-image zonogon at the
// chained accuracy j, conjugated by C_q; theta_i = C_q(alpha_i) with
// alpha_i = ((2 s_i + 1) / (2 t_i xi), 0) -> (p, 0).
CommutingFamily build_commuting_family(long p, long q, const std::vector<Vec2Q>& generators,
                                       double ell, int count = 3);

// The shear-spreading extraction: largest sub-segments of gamma aligned to
// the half-period lattice, imaged through J_{eta,xi} and split per half
// period (each half-period piece maps to a single segment).
std::vector<geom::Segment> spread_segments(const std::vector<geom::Segment>& gamma, double eta,
                                           int xi, int pieces_per_half_period = 1);

}  // namespace torus::spreader
