#include "hear/billiards.hpp"
#include "hear/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hear;

TEST(ShortestPath, Examples) {
    const auto e = shortest_closed_path(Triangle::from_sides(1, 1, 1));
    EXPECT_EQ(e.kind, PathKind::fagnano);
    EXPECT_NEAR(e.length, 1.5, 1e-15);
    EXPECT_NEAR(test::unfolded_orbit_length(Triangle::from_sides(1, 1, 1)), 1.5, 1e-15);

    const auto t = shortest_closed_path(Triangle::from_sides(6, 5, 5));
    EXPECT_EQ(t.kind, PathKind::fagnano);
    EXPECT_NEAR(t.length, 7.68, 1e-14);
    EXPECT_NEAR(test::unfolded_orbit_length(Triangle::from_sides(6, 5, 5)), 7.68, 1e-14);

    const auto r = shortest_closed_path(Triangle::from_sides(5, 4, 3));
    EXPECT_EQ(r.kind, PathKind::altitude);
    EXPECT_EQ(r.length, 4.8);
    EXPECT_EQ(r.points[0][1], 0.0);
    EXPECT_NEAR(test::dist(r.points[0], r.points[1]), 2.4, 1e-15);
}

TEST(ShortestPath, OrthicPointsAreAltitudeFeet) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto t = test::random_acute(rng);
        const auto info = shortest_closed_path(t);
        ASSERT_EQ(info.kind, PathKind::fagnano);
        const auto& v = info.frame;
        const int opposite[3] = {0, 1, 2};
        const int side[3][2] = {{1, 2}, {0, 2}, {0, 1}};
        double perim = 0.0;
        for (int k = 0; k < 3; ++k) {
            const auto& p = info.points[k];
            const auto& a = v[side[k][0]];
            const auto& b = v[side[k][1]];
            const auto& o = v[opposite[k]];
            const double sx = b[0] - a[0], sy = b[1] - a[1];
            // On the side, and the segment from the opposite vertex is perpendicular to it.
            EXPECT_NEAR((p[0] - a[0]) * sy - (p[1] - a[1]) * sx, 0.0, 1e-12);
            EXPECT_NEAR((p[0] - o[0]) * sx + (p[1] - o[1]) * sy, 0.0, 1e-12);
            perim += test::dist(p, info.points[(k + 1) % 3]);
        }
        EXPECT_NEAR(perim / info.length, 1.0, 1e-12);
        EXPECT_NEAR(test::unfolded_orbit_length(t) / info.length, 1.0, 1e-12);
    }
}

TEST(ReflectionLaw, FagnanoOrbits) {
    const auto e = reflection_law_check(shortest_closed_path(Triangle::from_sides(1, 1, 1)));
    EXPECT_LE(e.max_residual, 1e-10);
    for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(e.incoming[k], pi / 3, 1e-12);
    const auto t = reflection_law_check(shortest_closed_path(Triangle::from_sides(6, 5, 5)));
    EXPECT_TRUE(t.passed());
    EXPECT_THROW(reflection_law_check(shortest_closed_path(Triangle::from_sides(5, 4, 3))), WrongKind);
}

TEST(ReflectionLaw, AltitudePathIsPerpendicular) {
    const auto r = shortest_closed_path(Triangle::from_sides(5, 4, 3));
    EXPECT_LE(altitude_reflection_residual(r), 1e-15);
    EXPECT_LE(altitude_reflection_residual(shortest_closed_path(Triangle::from_sides(5, 3, 3))), 1e-15);
    EXPECT_THROW(altitude_reflection_residual(shortest_closed_path(Triangle::from_sides(1, 1, 1))), WrongKind);
}

TEST(ShortestPath, FagnanoBeatsRandomInscribedTriangles) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const auto info = shortest_closed_path(test::random_acute(rng));
        const auto& v = info.frame;
        for (int j = 0; j < 1000; ++j) {
            const double s0 = u(rng), s1 = u(rng), s2 = u(rng);
            const Point2 p{v[1][0] + s0 * (v[2][0] - v[1][0]), v[1][1] + s0 * (v[2][1] - v[1][1])};
            const Point2 q{v[0][0] + s1 * (v[2][0] - v[0][0]), v[0][1] + s1 * (v[2][1] - v[0][1])};
            const Point2 r{v[0][0] + s2 * (v[1][0] - v[0][0]), v[0][1] + s2 * (v[1][1] - v[0][1])};
            EXPECT_GE(test::dist(p, q) + test::dist(q, r) + test::dist(r, p), info.length - 1e-9);
        }
    }
}

TEST(ShortestPath, ContinuousAtRightAngle) {
    // Isosceles triangles with apex angle approaching pi/2 from below.
    double prev = INFINITY;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double apex = pi / 2 - eps;
        const Triangle t = Triangle::from_sides(2 * std::sin(apex / 2), 1, 1);
        const auto info = shortest_closed_path(t);
        ASSERT_EQ(info.kind, PathKind::fagnano);
        const double altitude = 2 * (2 * area_of(t) / t.a());
        const double gap = std::abs(info.length - altitude);
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(ShortestPath, NeverLongerThanPerimeter) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 2000; ++i) {
        const auto t = test::random_triangle(rng, 0.01);
        const auto info = shortest_closed_path(t);
        EXPECT_GT(info.length, 0.0);
        EXPECT_LE(info.length, t.a() + t.b() + t.c());
        EXPECT_EQ(info.kind == PathKind::fagnano, angles_of(t).alpha() < pi / 2);
    }
}

TEST(ShortestPath, CongruenceAndScaling) {
    EXPECT_EQ(shortest_closed_path(Triangle::from_sides(6, 5, 4)).length,
              shortest_closed_path(Triangle::from_sides(4, 6, 5)).length);
    const Triangle t = Triangle::from_sides(6, 5, 4);
    EXPECT_EQ(shortest_closed_path(t.scaled(2.0)).length, 2.0 * shortest_closed_path(t).length);
    EXPECT_EQ(shortest_closed_path(t.scaled(0.5)).length, 0.5 * shortest_closed_path(t).length);
    EXPECT_NEAR(shortest_closed_path(t.scaled(3.7)).length / shortest_closed_path(t).length, 3.7, 1e-14);
}

TEST(Durso, NoCollisionOn30Grid) {
    const auto r = durso_injectivity_scan(30);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.points, 900u);
    const auto s = durso_injectivity_scan_serial(30);
    EXPECT_EQ(s.collisions, r.collisions);
    EXPECT_EQ(s.min_margin, r.min_margin);
    EXPECT_THROW(durso_injectivity_scan(29), DomainError);
}
