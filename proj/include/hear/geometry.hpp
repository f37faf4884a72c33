#pragma once

#include <array>
#include <numbers>
#include <span>

namespace hear {

inline constexpr double pi = std::numbers::pi;

// Euclidean triangle stored by its sides in canonical order a >= b >= c.
// Two triangles are congruent iff their side triples compare equal.
class Triangle {
public:
    // Sorts and validates; throws NonPositiveSide / TriangleInequalityViolated.
    static Triangle from_sides(double a, double b, double c);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    std::array<double, 3> sides() const { return {a_, b_, c_}; }

    Triangle scaled(double s) const { return from_sides(s * a_, s * b_, s * c_); }

private:
    Triangle(double a, double b, double c) : a_(a), b_(b), c_(c) {}
    double a_, b_, c_;
};

inline Triangle triangle_from_sides(double a, double b, double c) { return Triangle::from_sides(a, b, c); }

// A point of the open angle simplex {alpha + beta + gamma = pi, all > 0}.
class AnglePoint {
public:
    static constexpr double sum_tolerance = 1e-12;

    AnglePoint(double alpha, double beta, double gamma);

    double alpha() const { return v_[0]; }
    double beta() const { return v_[1]; }
    double gamma() const { return v_[2]; }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::array<double, 3>& values() const { return v_; }

    static AnglePoint equilateral() { return {pi / 3, pi / 3, pi / 3}; }

private:
    std::array<double, 3> v_;
};

struct InvariantTriple {
    double area;
    double perimeter;
    double reciprocal_angle_sum;
};

struct HeatCoefficients {
    double a0;
    double a_half;
    double a1;
};

struct CotIdentity {
    double lhs;     // P^2 / (4A)
    double rhs;     // sum of half-angle cotangents
    double product; // product of half-angle cotangents
};

// Angles opposite a, b, c. The two smaller angles come from the half-angle
// tangent formula; the largest is pi minus their sum.
AnglePoint angles_of(const Triangle& t);

// Heron's formula in the cancellation-free ordering for sorted sides.
double area_of(const Triangle& t);

InvariantTriple invariants_of(const Triangle& t);

CotIdentity cot_identity_sides(const Triangle& t);

HeatCoefficients heat_coefficients(const InvariantTriple& inv);

// General polygon: a1 = (1/24) * sum(pi/alpha_i - alpha_i/pi) over interior angles.
HeatCoefficients heat_coefficients(double area, double perimeter, std::span<const double> interior_angles);

double corner_sum(std::span<const double> interior_angles);

// Closed-form inverse of heat_coefficients for triangles.
InvariantTriple invariants_from_coefficients(const HeatCoefficients& h);

// Sides proportional to sin(angle), scaled to the requested area.
Triangle triangle_from_angles(const AnglePoint& p, double area);

// Largest relative side difference after canonical sorting.
double max_relative_side_error(const Triangle& x, const Triangle& reference);

} // namespace hear
