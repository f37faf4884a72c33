#pragma once

#include "hear/geometry.hpp"
#include "hear/reconstruction.hpp"

#include <array>

namespace hear {

using Point2 = std::array<double, 2>;

enum class PathKind { fagnano, altitude };

const char* to_string(PathKind k);

// Shortest closed billiard path, in the frame of triangle_frame(): longest
// side from (0,0) to (a,0), apex above it.
struct ClosedPathInfo {
    double length = 0.0;
    PathKind kind = PathKind::fagnano;
    std::array<Point2, 3> frame{};
    // fagnano: altitude feet on sides (v1 v2), (v0 v2), (v0 v1), in orbit order.
    // altitude: points[0] is the foot on the longest side, points[1] the apex.
    std::array<Point2, 3> points{};
};

// Acute: orthic triangle, length a cos(alpha) + b cos(beta) + c cos(gamma).
// Right or obtuse: the shortest altitude traversed twice.
ClosedPathInfo shortest_closed_path(const Triangle& t);

struct ReflectionReport {
    // Per orbit vertex: angle of the incoming and the outgoing segment with the side.
    std::array<double, 3> incoming{};
    std::array<double, 3> outgoing{};
    double max_residual = 0.0;
    bool passed() const { return max_residual <= 1e-10; }
};

// Throws WrongKind unless info.kind == fagnano.
ReflectionReport reflection_law_check(const ClosedPathInfo& info);

// |angle - pi/2| between the altitude path and the longest side; throws
// WrongKind unless info.kind == altitude.
double altitude_reflection_residual(const ClosedPathInfo& info);

inline constexpr double durso_separation = 1e-2;
inline constexpr double durso_tolerance = 1e-6;

// grid_n^2 triangles of perimeter 1 from the canonical chamber; a collision is
// a pair farther apart than durso_separation (in angles) whose A and l0 agree
// to durso_tolerance relative. min_margin is max(|dA|/A, |dl0|/l0) minimized.
InjectivityReport durso_injectivity_scan(int grid_n);
InjectivityReport durso_injectivity_scan_serial(int grid_n);

} // namespace hear
