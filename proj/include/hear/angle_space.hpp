#pragma once

#include "hear/geometry.hpp"

#include <Eigen/Core>

#include <array>
#include <utility>

namespace hear {

using Vec3 = std::array<double, 3>;

// f = sum cot(x_i / 2); by the half-angle identity f = P^2 / (4A).
double f_value(const AnglePoint& p);
// g = sum 1 / x_i, the reciprocal-angle sum R.
double g_value(const AnglePoint& p);

Vec3 grad_f(const AnglePoint& p);
Vec3 grad_g(const AnglePoint& p);

// Hessian of g on the positive octant: diag(2/x^3).
Eigen::Matrix3d hessian_g(const Vec3& x);

// det[grad f; grad g; (1,1,1)]. Zero exactly at isosceles points.
double independence_det(const AnglePoint& p);
// Same determinant with every row scaled to unit length.
double normalized_independence_det(const AnglePoint& p);

inline constexpr double isosceles_threshold = 1e-9;
bool is_isosceles(const AnglePoint& p, double threshold = isosceles_threshold);

// G(x) = 1/sin^2 x - 1/x^2 on (0, pi). Taylor branches within 1e-3 of either end.
double G_closed(double x);
// Partial-fraction truncation: sum over 0 < |k| <= K of 1/(x - k pi)^2.
double G_series(double x, int K);

// 3x^4 - 3 sin^4 x - 2 x^4 sin^2 x, positive on (0, pi].
double convexity_margin(double x);
// x - x^3/6 + x^5/120 - sin x, positive for x > 0.
double sine_bound_margin(double x);

struct GShapeReport {
    int grid_n = 0;
    double min_first_difference = 0;  // min G(x_{i+1}) - G(x_i)
    double min_second_difference = 0; // min G(x_{i+1}) - 2G(x_i) + G(x_{i-1})
    double min_convexity_margin = 0;  // relative: margin / (3 x^4)
    double min_sine_margin = 0;       // relative: margin / x
    bool increasing = false;
    bool convex = false;
    bool convexity_inequality = false;
    bool sine_inequality = false;
    bool all() const { return increasing && convex && convexity_inequality && sine_inequality; }
};

// Uniform interior grid x_i = i * pi / (grid_n + 1), i = 1..grid_n.
GShapeReport g_shape_witness(int grid_n);

// Permutation taking a point to the canonical chamber alpha >= beta >= gamma:
// canonical[i] = original[perm[i]].
struct ChamberLabel {
    std::array<int, 3> perm{0, 1, 2};
    bool is_identity() const { return perm == std::array<int, 3>{0, 1, 2}; }
    bool operator==(const ChamberLabel&) const = default;
};

std::pair<AnglePoint, ChamberLabel> canonicalize(const AnglePoint& p);

bool in_closed_canonical_chamber(const AnglePoint& p);

// Level set g = s restricted to the closed canonical chamber.
struct LevelCurvePoint {
    AnglePoint point;
    double level;
    double u; // arc parameter in [0, 1]
};

struct LevelArc {
    double level;
    AnglePoint apex_side; // on alpha = beta (u = 0)
    AnglePoint base_side; // on beta = gamma (u = 1)
    int iterations = 0;   // bisection steps spent locating the endpoints
};

// Throws InfeasibleTarget for s < 9/pi.
LevelArc level_arc(double s);

// Projects the chord point (1-u) p + u q radially from the equilateral point onto g = s.
LevelCurvePoint level_arc_point(const LevelArc& arc, double u, int* iterations = nullptr);

} // namespace hear
