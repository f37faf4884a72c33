#include "hear/geometry.hpp"

#include "hear/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hear {

Triangle Triangle::from_sides(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        std::ostringstream os;
        os << "side lengths must be finite and positive, got (" << a << ", " << b << ", " << c << ")";
        throw NonPositiveSide(os.str());
    }
    std::array<double, 3> s{a, b, c};
    std::sort(s.begin(), s.end(), std::greater<>());
    if (!(s[2] + s[1] > s[0])) {
        std::ostringstream os;
        os << "sides (" << s[0] << ", " << s[1] << ", " << s[2] << ") violate the strict triangle inequality";
        throw TriangleInequalityViolated(os.str());
    }
    return Triangle(s[0], s[1], s[2]);
}

AnglePoint::AnglePoint(double alpha, double beta, double gamma) : v_{alpha, beta, gamma} {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0) ||
        !(std::abs(alpha + beta + gamma - pi) <= sum_tolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "(" << alpha << ", " << beta << ", " << gamma << ") is not in the angle simplex";
        throw DomainError(os.str());
    }
}

AnglePoint angles_of(const Triangle& t) {
    const double a = t.a(), b = t.b(), c = t.c();
    // Each factor below is computed without cancellation for a >= b >= c.
    const double s0 = a + (b + c);      // 2s
    const double sa = c - (a - b);      // 2(s - a)
    const double sb = c + (a - b);      // 2(s - b)
    const double sc = b + (a - c);      // 2(s - c)
    const double beta = 2.0 * std::atan(std::sqrt((sa * sc) / (s0 * sb)));
    const double gamma = 2.0 * std::atan(std::sqrt((sa * sb) / (s0 * sc)));
    const double alpha = pi - beta - gamma;
    return {alpha, beta, gamma};
}

double area_of(const Triangle& t) {
    const double a = t.a(), b = t.b(), c = t.c();
    return 0.25 * std::sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)));
}

InvariantTriple invariants_of(const Triangle& t) {
    const AnglePoint p = angles_of(t);
    return {area_of(t), t.a() + t.b() + t.c(), 1.0 / p.alpha() + 1.0 / p.beta() + 1.0 / p.gamma()};
}

CotIdentity cot_identity_sides(const Triangle& t) {
    const double area = area_of(t);
    const double perim = t.a() + t.b() + t.c();
    const AnglePoint p = angles_of(t);
    double sum = 0.0, prod = 1.0;
    for (double x : p.values()) {
        const double ct = 1.0 / std::tan(0.5 * x);
        sum += ct;
        prod *= ct;
    }
    return {perim * perim / (4.0 * area), sum, prod};
}

double corner_sum(std::span<const double> interior_angles) {
    double s = 0.0;
    for (double x : interior_angles)
        s += pi / x - x / pi;
    return s;
}

HeatCoefficients heat_coefficients(const InvariantTriple& inv) {
    return {inv.area / (4.0 * pi), -inv.perimeter / (8.0 * std::sqrt(pi)),
            (pi / 24.0) * inv.reciprocal_angle_sum - 1.0 / 24.0};
}

HeatCoefficients heat_coefficients(double area, double perimeter, std::span<const double> interior_angles) {
    return {area / (4.0 * pi), -perimeter / (8.0 * std::sqrt(pi)), corner_sum(interior_angles) / 24.0};
}

InvariantTriple invariants_from_coefficients(const HeatCoefficients& h) {
    return {4.0 * pi * h.a0, -8.0 * std::sqrt(pi) * h.a_half, (24.0 * h.a1 + 1.0) / pi};
}

Triangle triangle_from_angles(const AnglePoint& p, double area) {
    // sin(alpha) = sin(beta + gamma) keeps full relative accuracy for alpha near pi.
    const double sa = std::sin(p.beta() + p.gamma()), sb = std::sin(p.beta()), sc = std::sin(p.gamma());
    // Circumradius 1/2 gives area sa*sb*sc/2.
    const double unit_area = 0.5 * sa * sb * sc;
    const double k = std::sqrt(area / unit_area);
    return Triangle::from_sides(k * sa, k * sb, k * sc);
}

double max_relative_side_error(const Triangle& x, const Triangle& reference) {
    const auto u = x.sides(), v = reference.sides();
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
        e = std::max(e, std::abs(u[i] - v[i]) / v[i]);
    return e;
}

} // namespace hear
