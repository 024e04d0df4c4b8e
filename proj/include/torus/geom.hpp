#pragma once

// Planar / integer / rational linear algebra: vectors, unimodular matrices,
// segments, point clouds, convex polygons, Minkowski zonogons, Hausdorff
// distance and related metrics. Exact rational arithmetic is used for the
// combinatorial objects (zonogon vertices, stage matrices); doubles carry
// the dynamics.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torus::geom {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Vectors and matrices

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    constexpr bool operator==(const Vec2& r) const { return x == r.x && y == r.y; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double dist_sq(const Vec2& a, const Vec2& b) { return (a - b).norm_sq(); }

// Exact rational point/vector.
struct Vec2Q {
    Rat x = 0;
    Rat y = 0;

    Vec2Q() = default;
    Vec2Q(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
    Vec2Q(long xx, long yy) : x(xx), y(yy) {}

    Vec2Q operator+(const Vec2Q& r) const { return {x + r.x, y + r.y}; }
    Vec2Q operator-(const Vec2Q& r) const { return {x - r.x, y - r.y}; }
    Vec2Q operator-() const { return {-x, -y}; }
    Vec2Q operator*(const Rat& s) const { return {x * s, y * s}; }
    bool operator==(const Vec2Q& r) const { return x == r.x && y == r.y; }

    Rat cross(const Vec2Q& r) const { return x * r.y - y * r.x; }
    bool is_zero() const { return x == 0 && y == 0; }
    Vec2 to_double() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

// Integer 2x2 matrix, |det| = 1 contexts (GL(2,Z) / SL(2,Z)).
// Row-major: [[a, b], [c, d]].
struct Mat2Z {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static Mat2Z identity() { return {}; }

    std::int64_t det() const { return a * d - b * c; }
    bool unimodular() const { return det() == 1 || det() == -1; }

    Vec2 apply(const Vec2& v) const {
        return {static_cast<double>(a) * v.x + static_cast<double>(b) * v.y,
                static_cast<double>(c) * v.x + static_cast<double>(d) * v.y};
    }
    Vec2Q apply(const Vec2Q& v) const {
        return {Rat(a) * v.x + Rat(b) * v.y, Rat(c) * v.x + Rat(d) * v.y};
    }
    Mat2Z mul(const Mat2Z& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
    // Exact inverse; requires |det| = 1.
    Mat2Z inverse() const {
        const std::int64_t dt = det();
        if (dt != 1 && dt != -1) throw std::invalid_argument("Mat2Z::inverse: matrix is not unimodular");
        if (dt == 1) return {d, -b, -c, a};
        return {-d, b, c, -a};
    }
    bool operator==(const Mat2Z& r) const { return a == r.a && b == r.b && c == r.c && d == r.d; }
    bool is_identity() const { return *this == Mat2Z{}; }
};

struct Segment {
    Vec2 p;
    Vec2 q;

    Segment(const Vec2& pp, const Vec2& qq) : p(pp), q(qq) {
        if (pp == qq) throw std::invalid_argument("Segment: endpoints coincide");
    }
    double length() const { return dist(p, q); }
};

// Distance from a point to a closed segment [p, q].
double dist_point_segment(const Vec2& v, const Vec2& p, const Vec2& q);

// ---------------------------------------------------------------------------
// Point clouds

// Finite sampled subset of the plane. resolution_hint records the max
// nearest-neighbor spacing at creation so downstream tolerance accounting
// can budget discretization explicitly.
struct PointCloud {
    std::vector<Vec2> pts;
    double resolution_hint = 0.0;

    PointCloud() = default;
    PointCloud(std::vector<Vec2> points, double hint)
        : pts(std::move(points)), resolution_hint(hint) {
        if (pts.empty()) throw std::invalid_argument("PointCloud: empty point set");
        if (resolution_hint < 0) throw std::invalid_argument("PointCloud: negative resolution hint");
    }

    std::size_t size() const { return pts.size(); }
    Vec2 centroid() const;
    PointCloud translated(const Vec2& t) const;
};

// Grid-bucketed nearest-neighbor index over a fixed cloud.
class NearestNeighborGrid {
public:
    explicit NearestNeighborGrid(const std::vector<Vec2>& pts);

    // Distance from q to the nearest indexed point.
    double nearest_dist(const Vec2& q) const;

    // As above, but one exact-coordinate match of q is ignored (nearest
    // *other* point when q itself is indexed).
    double nearest_other_dist(const Vec2& q) const;

private:
    std::vector<Vec2> pts_;          // reordered by cell
    std::vector<std::size_t> cell_start_;
    int nx_ = 1, ny_ = 1;
    double minx_ = 0, miny_ = 0, cell_ = 1;

    std::size_t cell_index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx_ + ix; }
    double search(const Vec2& q, bool& skip_self) const;
};

// max over a in A of d(a, B); grid-accelerated, deterministic.
double directed_hausdorff(const PointCloud& a, const PointCloud& b);
double directed_hausdorff(const PointCloud& a, const NearestNeighborGrid& b);

// Hausdorff distance between two clouds.
double hausdorff(const PointCloud& a, const PointCloud& b);

// Max pairwise distance (0 for a singleton); convex hull + rotating calipers.
double diameter(const PointCloud& a);

// True iff every point of y lies within eps of some point of x.
bool eps_dense(const PointCloud& x, const PointCloud& y, double eps);

// Sampling of the Minkowski sum X + [-v, v]: each point swept along the
// segment at the requested density.
PointCloud stretch(const PointCloud& x, const Vec2& v, int samples_per_unit);

// Max nearest-neighbor spacing of the cloud as it stands (empirical
// counterpart of resolution_hint; 0 for a singleton).
double max_nn_spacing(const PointCloud& cloud);

// ---------------------------------------------------------------------------
// Polygons and zonogons

// Counterclockwise vertex cycle. degenerate marks segment (2 vertices) or
// point (1 vertex) cases.
struct ConvexPolygon {
    std::vector<Vec2> vertices;
    bool degenerate = false;
    bool point_symmetric = false;

    bool empty() const { return vertices.empty(); }
};

// Strict convex hull (collinear points dropped), CCW. Degenerate inputs give
// a flagged point/segment polygon.
ConvexPolygon convex_hull(std::vector<Vec2> pts);

// Exact zonogon Zon(v_1..v_l) = [-v_1,v_1] + ... + [-v_l,v_l] as a CCW
// rational vertex cycle. Collinear generators are merged; an all-collinear
// set yields the two segment endpoints.
std::vector<Vec2Q> zonogon_vertices(const std::vector<Vec2Q>& generators);

// Double-precision polygon for the same zonogon, flags set.
ConvexPolygon minkowski_zonogon(const std::vector<Vec2Q>& generators);

double polygon_diameter(const ConvexPolygon& poly);
Vec2 polygon_centroid_vertices(const ConvexPolygon& poly);

// Distance from a point to the filled polygon (0 inside).
double dist_point_polygon(const Vec2& v, const ConvexPolygon& poly);

// Samples the filled polygon: boundary at half the step plus an interior
// lattice at the step. resolution_hint is set to the step.
PointCloud sample_polygon(const ConvexPolygon& poly, double step);

// ---------------------------------------------------------------------------
// Norms, angles, unimodular completion

// Largest singular value of [[a, b], [c, d]], closed form.
double op_norm(double a, double b, double c, double d);
double op_norm(const Mat2Z& m);

// Arc distance on S^1 between the directions of u and v, in [0, pi].
double angular_distance(const Vec2& u, const Vec2& v);

// Distance between undirected directions (mod +-), in [0, pi/2].
double projective_distance(const Vec2& u, const Vec2& v);

// A in SL(2,Z) with det +1 and second column w (so A(0,1) = w), for a
// primitive integer vector w; canonical choice minimizes the first column in
// lexicographic absolute value.
Mat2Z primitive_completion(std::int64_t w1, std::int64_t w2);

}  // namespace torus::geom
