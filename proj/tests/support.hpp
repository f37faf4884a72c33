#pragma once

#include "hear/billiards.hpp"
#include "hear/geometry.hpp"

#include <array>
#include <cmath>
#include <random>

namespace hear::test {

// Random angle triple with every angle >= floor, uniformly over that sub-simplex.
inline AnglePoint random_angles(std::mt19937_64& rng, double floor = 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng), y = u(rng);
    if (x + y > 1.0) {
        x = 1.0 - x;
        y = 1.0 - y;
    }
    const double span = pi - 3.0 * floor;
    const double a = floor + span * x, b = floor + span * y;
    return {a, b, pi - a - b};
}

inline Triangle random_triangle(std::mt19937_64& rng, double floor = 0.0) {
    for (;;) {
        const AnglePoint p = random_angles(rng, floor);
        if (p.alpha() > 1e-6 && p.beta() > 1e-6 && p.gamma() > 1e-6) {
            std::uniform_real_distribution<double> scale(0.1, 10.0);
            const double s = scale(rng);
            return Triangle::from_sides(s * std::sin(p.alpha()), s * std::sin(p.beta()), s * std::sin(p.gamma()));
        }
    }
}

inline Triangle random_acute(std::mt19937_64& rng, double floor = 0.05) {
    for (;;) {
        const AnglePoint p = random_angles(rng, floor);
        if (p.alpha() < pi / 2 - floor && p.beta() < pi / 2 - floor && p.gamma() < pi / 2 - floor)
            return Triangle::from_sides(std::sin(p.alpha()), std::sin(p.beta()), std::sin(p.gamma()));
    }
}

// Law of cosines in long double; independent of the half-angle route used by the library.
inline std::array<long double, 3> angles_by_cosines(const Triangle& t) {
    const long double a = t.a(), b = t.b(), c = t.c();
    return {std::acos((b * b + c * c - a * a) / (2 * b * c)), std::acos((a * a + c * c - b * b) / (2 * a * c)),
            std::acos((a * a + b * b - c * c) / (2 * a * b))};
}

inline long double heron_naive(const Triangle& t) {
    const long double a = t.a(), b = t.b(), c = t.c(), s = (a + b + c) / 2;
    return std::sqrt(s * (s - a) * (s - b) * (s - c));
}

inline Point2 reflect(const Point2& p, const Point2& q, const Point2& r) {
    const double dx = r[0] - q[0], dy = r[1] - q[1];
    const double s = ((p[0] - q[0]) * dx + (p[1] - q[1]) * dy) / (dx * dx + dy * dy);
    return {2.0 * (q[0] + s * dx) - p[0], 2.0 * (q[1] + s * dy) - p[1]};
}

// Unfolding oracle for the Fagnano orbit: the foot F of the altitude from the
// apex, reflected across the two other sides, spans a straight segment whose
// length is the orbit length.
inline double unfolded_orbit_length(const Triangle& t) {
    const double a = t.a(), b = t.b(), c = t.c();
    const double x = (a * a + b * b - c * c) / (2.0 * a);
    const double y = std::sqrt(std::max(0.0, b * b - x * x));
    const Point2 v0{0.0, 0.0}, v1{a, 0.0}, v2{x, y}, f{x, 0.0};
    const Point2 p = reflect(f, v0, v2), q = reflect(f, v1, v2);
    return std::hypot(p[0] - q[0], p[1] - q[1]);
}

inline double dist(const Point2& p, const Point2& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); }

} // namespace hear::test
