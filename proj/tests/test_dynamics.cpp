#include "torus/dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace torus::dynamics;
using torus::geom::Mat2Z;
using torus::geom::PointCloud;
using torus::geom::Vec2;

namespace {

LiftWord word_of(std::vector<Generator> gens) { return make_word(std::move(gens)); }

// Random word built from Z^2-commuting blocks (translations, shears, and
// matched A ... A^{-1} conjugations), so the whole word is equivariant.
// Parameter ranges stay moderate: the word's Lipschitz product multiplies
// one-ulp wave-breakpoint errors, and the suite asserts a 1e-9 defect.
LiftWord random_equivariant_word(std::mt19937_64& rng, int max_len) {
    std::uniform_real_distribution<double> real(-2.0, 2.0);
    std::uniform_int_distribution<int> xi_dist(1, 8);
    std::vector<Generator> gens;
    const int target = 1 + static_cast<int>(rng() % max_len);
    while (static_cast<int>(gens.size()) < target) {
        switch (rng() % 3) {
            case 0: gens.push_back(Translation{{real(rng), real(rng)}}); break;
            case 1: {
                double eta = real(rng);
                if (eta == 0.0) eta = 1.0;
                gens.push_back(Shear{eta, xi_dist(rng)});
                break;
            }
            default: {
                // unimodular conjugator around a shear keeps monodromy trivial
                const std::int64_t k = rng() % 2 ? 1 : -1;
                const Mat2Z a = rng() % 2 ? Mat2Z{1, k, 0, 1} : Mat2Z{1, 0, k, 1};
                double eta = real(rng);
                if (eta == 0.0) eta = -1.0;
                gens.push_back(Linear{a});
                gens.push_back(Shear{eta, xi_dist(rng)});
                gens.push_back(Linear{a.inverse()});
                break;
            }
        }
    }
    return word_of(std::move(gens));
}

}  // namespace

TEST_CASE("triangle wave values at quarter periods") {
    CHECK(phi(1, 0.0) == doctest::Approx(1.0));
    CHECK(phi(1, 0.25) == doctest::Approx(0.0));
    CHECK(phi(1, 0.5) == doctest::Approx(-1.0));
    CHECK(phi(2, 0.25) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(phi(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(1, 3.0e12), std::invalid_argument);
}

TEST_CASE("triangle wave: exact periodicity at representable points") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pow(0, 6);
    std::uniform_int_distribution<long> lattice(-4096, 4096);
    for (int trial = 0; trial < 2000; ++trial) {
        const int xi = 1 << pow(rng);
        const double x = static_cast<double>(lattice(rng)) / 1024.0;  // dyadic
        CHECK(phi(xi, x + 1.0 / xi) == phi(xi, x));
        // breakpoints attain exactly +-1
        const double bp = static_cast<double>(lattice(rng)) / (2.0 * xi);
        CHECK(std::abs(phi(xi, bp)) == 1.0);
    }
}

TEST_CASE("triangle wave: bounded by 1, near-periodic for general xi") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> xdist(-20.0, 20.0);
    std::uniform_int_distribution<int> xi_dist(1, 97);
    for (int trial = 0; trial < 5000; ++trial) {
        const int xi = xi_dist(rng);
        const double x = xdist(rng);
        const double v = phi(xi, x);
        CHECK(std::abs(v) <= 1.0);
        CHECK(std::abs(phi(xi, x + 1.0 / xi) - v) <= 1e-11);
    }
}

TEST_CASE("generator application") {
    const Vec2 sheared = apply_generator(Generator{Shear{1.0, 1}}, {0.125, 0.0});
    CHECK(sheared.x == doctest::Approx(0.125));
    CHECK(sheared.y == doctest::Approx(0.5));

    CHECK(apply_generator(Generator{Translation{{1.0 / 3, 0.5}}}, {0, 0}) == Vec2{1.0 / 3, 0.5});

    // right-to-left order: translation first, then the linear map
    const LiftWord w = word_of({Linear{Mat2Z{1, 1, 0, 1}}, Translation{{1, 0}}});
    CHECK(apply(w, {0, 0}) == Vec2{1, 0});
}

TEST_CASE("shear group law and inversion") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> eta(-8.0, 8.0);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> xi_dist(1, 64);
    for (int trial = 0; trial < 2000; ++trial) {
        const int xi = xi_dist(rng);
        const double e1 = eta(rng), e2 = eta(rng);
        const Vec2 p{coord(rng), coord(rng)};
        const Vec2 via_two = apply_generator(Generator{Shear{e1, xi}}, apply_generator(Generator{Shear{e2, xi}}, p));
        const Vec2 via_sum = apply_generator(Generator{Shear{e1 + e2, xi}}, p);
        CHECK((via_two - via_sum).norm() <= 1e-12);
        if (e1 != 0.0) {
            const Vec2 back = apply_generator(Generator{Shear{-e1, xi}}, apply_generator(Generator{Shear{e1, xi}}, p));
            CHECK((back - p).norm() <= 1e-12);
        }
    }
}

TEST_CASE("compose peephole simplification") {
    const LiftWord j1 = word_of({Shear{1.0, 1}});
    const LiftWord j2 = word_of({Shear{2.0, 1}});
    const LiftWord merged = compose(j1, j2);
    REQUIRE(merged.size() == 1);
    CHECK(std::get<Shear>(merged.word[0]).eta == doctest::Approx(3.0));

    CHECK(compose(j1, word_of({Shear{-1.0, 1}})).empty());
    CHECK(compose(word_of({Translation{{1, 2}}}), word_of({Translation{{-1, -2}}})).empty());

    const LiftWord lin =
        compose(word_of({Linear{Mat2Z{1, 1, 0, 1}}}), word_of({Linear{Mat2Z{1, -1, 0, 1}}}));
    CHECK(lin.empty());

    // different xi never merges
    CHECK(compose(j1, word_of({Shear{1.0, 2}})).size() == 2);
}

TEST_CASE("inverse undoes the word") {
    CHECK(std::get<Shear>(inverse(word_of({Shear{2.5, 3}})).word[0]).eta == doctest::Approx(-2.5));
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const LiftWord w = random_equivariant_word(rng, 8);
        const Vec2 p{coord(rng), coord(rng)};
        CHECK((apply(inverse(w), apply(w, p)) - p).norm() <= 1e-10);
        CHECK((apply(compose(w, inverse(w)), p) - p).norm() <= 1e-10);
    }
}

TEST_CASE("equivariance of words and the rescaled lift") {
    std::mt19937_64 rng(15);
    const std::vector<Vec2> z2 = {{1, 0}, {0, 1}};
    for (int trial = 0; trial < 50; ++trial) {
        const LiftWord w = random_equivariant_word(rng, 8);
        CHECK(equivariance_check(as_fn(w), z2, 100) <= 1e-9);
    }
    for (int q : {2, 3, 5}) {
        const LiftWord base = word_of({Shear{1.5, 2}, Translation{{0.25, 0.75}}});
        const RescaledLift lift = cq_conjugate(base, q);
        CHECK(equivariance_check(as_fn(lift), {{1.0 / q, 0.0}, {0, 1}}, 200) <= 1e-9);
    }
    // a bare linear part shifts lattice vectors through the matrix
    const LiftWord lin = word_of({Linear{Mat2Z{1, 1, 0, 1}}});
    const double defect = equivariance_check(as_fn(lin), {{0.5, 0.5}}, 50);
    CHECK(defect == doctest::Approx(0.5));
}

TEST_CASE("cq conjugation") {
    const RescaledLift t2 = cq_conjugate(word_of({Translation{{0.6, 0.8}}}), 2);
    const Vec2 moved = apply(t2, {0.1, 0.2});
    CHECK(moved.x == doctest::Approx(0.1 + 0.3));
    CHECK(moved.y == doctest::Approx(0.2 + 0.8));

    const RescaledLift ident = cq_conjugate(word_of({}), 7);
    CHECK(apply(ident, {0.3, 0.4}) == Vec2{0.3, 0.4});

    const RescaledLift sheared = cq_conjugate(word_of({Shear{1.0, 1}}), 3);
    const Vec2 p0{0.21, 0.53};
    const Vec2 lhs = apply(sheared, p0 + Vec2{1.0 / 3.0, 0.0});
    const Vec2 rhs = apply(sheared, p0) + Vec2{1.0 / 3.0, 0.0};
    CHECK((lhs - rhs).norm() <= 1e-12);

    // a word that only commutes with Z^2 up to a matrix is rejected
    CHECK_THROWS_AS(cq_conjugate(word_of({Linear{Mat2Z{1, 1, 0, 1}}}), 2), std::invalid_argument);
}

TEST_CASE("iterate_domain") {
    const FundamentalDomain dom = make_domain(8);
    const Vec2 theta{0.3, -0.2};
    const auto clouds = iterate_domain(word_of({Translation{theta}}), 3, dom);
    REQUIRE(clouds.size() == 3);
    for (int k = 0; k < 3; ++k) {
        const Vec2 expect = dom.cloud.pts[0] + theta * static_cast<double>(k + 1);
        CHECK((clouds[k].pts[0] - expect).norm() <= 1e-12);
    }

    const auto still = iterate_domain(word_of({}), 2, dom);
    CHECK(still[1].pts == dom.cloud.pts);

    const auto spread = iterate_domain(word_of({Shear{1.0, 1}}), 1, make_domain(16));
    CHECK(torus::geom::diameter(spread[0]) >= 2.0);

    // rescaled lifts iterate through the conjugated evaluation
    const RescaledLift half = cq_conjugate(word_of({Translation{{0.5, 0.25}}}), 2);
    const auto rescaled = iterate_domain(half, 2, dom);
    CHECK((rescaled[1].pts[0] - dom.cloud.pts[0] - Vec2{0.5, 0.5}).norm() <= 1e-12);
}

TEST_CASE("fundamental domain carries its basepoint") {
    const FundamentalDomain dom = make_domain(10);
    bool found = false;
    for (const Vec2& p : dom.cloud.pts)
        if (p == dom.basepoint) found = true;
    CHECK(found);
    CHECK(dom.cloud.resolution_hint == doctest::Approx(0.1));

    const FundamentalDomain odd = make_domain(7, {0.33, 0.41});
    found = false;
    for (const Vec2& p : odd.cloud.pts)
        if (p == odd.basepoint) found = true;
    CHECK(found);
}

TEST_CASE("generators preserve area") {
    // shoelace area of the image of a square boundary; the sample count is a
    // power of two so shear breakpoints land exactly on samples
    const int m = 1 << 12;
    std::vector<Vec2> boundary;
    boundary.reserve(4 * m);
    for (int k = 0; k < m; ++k) boundary.push_back({static_cast<double>(k) / m, 0.0});
    for (int k = 0; k < m; ++k) boundary.push_back({1.0, static_cast<double>(k) / m});
    for (int k = 0; k < m; ++k) boundary.push_back({1.0 - static_cast<double>(k) / m, 1.0});
    for (int k = 0; k < m; ++k) boundary.push_back({0.0, 1.0 - static_cast<double>(k) / m});

    const LiftWord w = word_of({Shear{1.5, 2}, Linear{Mat2Z{1, 1, 0, 1}}, Translation{{0.2, 0.7}}});
    double area2 = 0.0;
    Vec2 prev = apply(w, boundary.back());
    for (const Vec2& b : boundary) {
        const Vec2 cur = apply(w, b);
        area2 += prev.cross(cur);
        prev = cur;
    }
    CHECK(std::abs(area2 / 2.0) == doctest::Approx(1.0).epsilon(1e-9));
}
