#include "hear/billiards.hpp"

#include "hear/errors.hpp"
#include "hear/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hear {

const char* to_string(PathKind k) { return k == PathKind::fagnano ? "fagnano" : "altitude"; }

namespace {

// Foot of the perpendicular from p onto the line through q and r.
Point2 foot(const Point2& p, const Point2& q, const Point2& r) {
    const double dx = r[0] - q[0], dy = r[1] - q[1];
    const double s = ((p[0] - q[0]) * dx + (p[1] - q[1]) * dy) / (dx * dx + dy * dy);
    return {q[0] + s * dx, q[1] + s * dy};
}

// Unsigned angle between two vectors, in [0, pi].
double angle_between(double ux, double uy, double vx, double vy) {
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

} // namespace

ClosedPathInfo shortest_closed_path(const Triangle& t) {
    ClosedPathInfo info;
    info.frame = triangle_frame(t);
    const auto& v = info.frame;
    const double a = t.a(), b = t.b(), c = t.c();
    if (angles_of(t).alpha() < pi / 2) {
        info.kind = PathKind::fagnano;
        info.points = {foot(v[0], v[1], v[2]), foot(v[1], v[0], v[2]), foot(v[2], v[0], v[1])};
        const double ca = (b * b + c * c - a * a) / (2.0 * b * c);
        const double cb = (a * a + c * c - b * b) / (2.0 * a * c);
        const double cc = (a * a + b * b - c * c) / (2.0 * a * b);
        info.length = a * ca + b * cb + c * cc;
    } else {
        info.kind = PathKind::altitude;
        info.points = {Point2{v[2][0], 0.0}, v[2], v[2]};
        info.length = 2.0 * (2.0 * area_of(t) / a);
    }
    return info;
}

ReflectionReport reflection_law_check(const ClosedPathInfo& info) {
    if (info.kind != PathKind::fagnano)
        throw WrongKind("reflection law check needs a fagnano orbit; altitude paths reflect perpendicularly");
    const auto& v = info.frame;
    // Point i sits on the side opposite vertex i. Each ray is measured against
    // the side direction toward the vertex it shares with the neighbouring side.
    ReflectionReport r;
    for (int i = 0; i < 3; ++i) {
        const Point2& q = info.points[i];
        const Point2& prev = info.points[(i + 2) % 3];
        const Point2& next = info.points[(i + 1) % 3];
        const Point2& to_prev = v[(i + 1) % 3];
        const Point2& to_next = v[(i + 2) % 3];
        r.incoming[i] = angle_between(prev[0] - q[0], prev[1] - q[1], to_prev[0] - q[0], to_prev[1] - q[1]);
        r.outgoing[i] = angle_between(next[0] - q[0], next[1] - q[1], to_next[0] - q[0], to_next[1] - q[1]);
        r.max_residual = std::max(r.max_residual, std::abs(r.incoming[i] - r.outgoing[i]));
    }
    return r;
}

double altitude_reflection_residual(const ClosedPathInfo& info) {
    if (info.kind != PathKind::altitude)
        throw WrongKind("altitude residual needs an altitude path");
    const auto& f = info.points[0];
    const auto& apex = info.points[1];
    const auto& v = info.frame;
    const double ang = angle_between(apex[0] - f[0], apex[1] - f[1], v[1][0] - v[0][0], v[1][1] - v[0][1]);
    return std::abs(ang - pi / 2);
}

namespace {

struct DursoSample {
    AnglePoint angles;
    double area;
    double l0;
};

std::vector<DursoSample> durso_samples(int grid_n) {
    if (grid_n < 30)
        throw DomainError("durso_injectivity_scan needs grid_n >= 30");
    std::vector<DursoSample> out;
    for (const auto& p : chamber_grid(grid_n)) {
        const double sa = std::sin(p.alpha()), sb = std::sin(p.beta()), sc = std::sin(p.gamma());
        const double s = 1.0 / (sa + sb + sc);
        const Triangle t = Triangle::from_sides(s * sa, s * sb, s * sc);
        out.push_back({p, area_of(t), shortest_closed_path(t).length});
    }
    return out;
}

double angle_distance(const AnglePoint& x, const AnglePoint& y) {
    const double d0 = x[0] - y[0], d1 = x[1] - y[1], d2 = x[2] - y[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

// Margin for pair (i, j), or +inf when the pair is too close to count.
double pair_margin(const DursoSample& x, const DursoSample& y) {
    if (angle_distance(x.angles, y.angles) <= durso_separation)
        return std::numeric_limits<double>::infinity();
    const double da = std::abs(x.area - y.area) / std::max(x.area, y.area);
    const double dl = std::abs(x.l0 - y.l0) / std::max(x.l0, y.l0);
    return std::max(da, dl);
}

} // namespace

InjectivityReport durso_injectivity_scan_serial(int grid_n) {
    const auto s = durso_samples(grid_n);
    InjectivityReport r{grid_n, s.size(), 0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double m = pair_margin(s[i], s[j]);
            r.min_margin = std::min(r.min_margin, m);
            if (m <= durso_tolerance)
                ++r.collisions;
        }
    return r;
}

InjectivityReport durso_injectivity_scan(int grid_n) {
    const auto s = durso_samples(grid_n);
    const long n = static_cast<long>(s.size());
    double margin = std::numeric_limits<double>::infinity();
    std::size_t collisions = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : margin) reduction(+ : collisions)
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            const double m = pair_margin(s[i], s[j]);
            margin = std::min(margin, m);
            if (m <= durso_tolerance)
                ++collisions;
        }
    return {grid_n, s.size(), collisions, margin};
}

} // namespace hear
