#include "hear/reconstruction.hpp"

#include "hear/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hear {

namespace {

const double f_min = 3.0 * std::sqrt(3.0);
const double g_min = 9.0 / pi;

struct Residual {
    double f, g;
    double norm() const { return std::max(std::abs(f), std::abs(g)); }
};

Residual residual_at(const AnglePoint& p, double f_t, double g_t) {
    return {(f_value(p) - f_t) / f_t, (g_value(p) - g_t) / g_t};
}

// Newton on (beta, gamma) with alpha = pi - beta - gamma. Steps that do not
// reduce the residual or leave the closed chamber are rejected.
AnglePoint newton_polish(AnglePoint p, double f_t, double g_t, int max_steps, int& steps) {
    Residual r = residual_at(p, f_t, g_t);
    for (int k = 0; k < max_steps && r.norm() > 1e-15; ++k) {
        const Vec3 df = grad_f(p), dg = grad_g(p);
        const double j11 = (df[1] - df[0]) / f_t, j12 = (df[2] - df[0]) / f_t;
        const double j21 = (dg[1] - dg[0]) / g_t, j22 = (dg[2] - dg[0]) / g_t;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || det == 0.0)
            break;
        const double db = -(j22 * r.f - j12 * r.g) / det;
        const double dc = -(-j21 * r.f + j11 * r.g) / det;
        const double b = p.beta() + db, c = p.gamma() + dc;
        const double a = pi - b - c;
        if (!(c > 0.0) || !(a >= b) || !(b >= c))
            break;
        const AnglePoint q(a, b, c);
        const Residual rq = residual_at(q, f_t, g_t);
        ++steps;
        if (!(rq.norm() < r.norm()))
            break;
        p = q;
        r = rq;
    }
    return p;
}

AngleSolution finish(const AnglePoint& p, double f_t, double g_t, AngleSolution sol) {
    const Residual r = residual_at(p, f_t, g_t);
    sol.f_residual = std::abs(r.f);
    sol.g_residual = std::abs(r.g);
    if (!(r.norm() <= reconstruction_residual_tol)) {
        std::ostringstream os;
        os << "angle reconstruction residual " << r.norm() << " exceeds " << reconstruction_residual_tol;
        throw NoConvergence(os.str());
    }
    sol.angles = p;
    return sol;
}

} // namespace

AngleSolution reconstruct_angles(double f_target, double g_target, const ReconstructOptions& opt) {
    const double slack = opt.feasibility_slack;
    bool projected = false;
    if (!std::isfinite(f_target) || !std::isfinite(g_target))
        throw InfeasibleTarget("targets must be finite");
    if (g_target < g_min - 1e-12) {
        if (g_target < g_min * (1.0 - slack)) {
            std::ostringstream os;
            os.precision(10);
            os << "reciprocal-angle sum " << g_target << " is below its minimum 9/pi = " << g_min;
            throw InfeasibleTarget(os.str());
        }
        g_target = g_min;
        projected = true;
    }
    if (f_target < f_min - 1e-12) {
        if (f_target < f_min * (1.0 - slack)) {
            std::ostringstream os;
            os.precision(10);
            os << "P^2/(4A) = " << f_target << " is below its minimum 3*sqrt(3) = " << f_min;
            throw InfeasibleTarget(os.str());
        }
        f_target = f_min;
        projected = true;
    }

    AngleSolution sol{.angles = AnglePoint::equilateral()};
    sol.projected = projected;

    // Level set collapsed onto the equilateral point.
    if (g_target <= g_min + 1e-12) {
        sol.f_apex = sol.f_base = f_min;
        if (std::abs(f_target - f_min) > std::max(1e-9, slack) * f_min) {
            std::ostringstream os;
            os.precision(10);
            os << "g = 9/pi forces the equilateral triangle, but f = " << f_target << " differs from 3*sqrt(3)";
            throw InfeasibleTarget(os.str());
        }
        sol.projected = projected || std::abs(f_target - f_min) > 1e-12 * f_min;
        sol.angles = AnglePoint::equilateral();
        sol.f_residual = std::abs(f_min - f_target) / f_target;
        sol.g_residual = std::abs(g_value(sol.angles) - g_target) / g_target;
        return sol;
    }

    // Phase 1: arc endpoints on the isosceles rays.
    const LevelArc arc = level_arc(g_target);
    sol.iterations += arc.iterations;
    sol.f_apex = f_value(arc.apex_side);
    sol.f_base = f_value(arc.base_side);
    const double f_lo = std::min(sol.f_apex, sol.f_base), f_hi = std::max(sol.f_apex, sol.f_base);
    const double tie = 1e-12 * f_target;

    if (f_target < f_lo - tie || f_target > f_hi + tie) {
        const double miss = f_target < f_lo ? (f_lo - f_target) / f_lo : (f_target - f_hi) / f_hi;
        if (miss > slack) {
            std::ostringstream os;
            os.precision(12);
            os << "P^2/(4A) = " << f_target << " is outside [" << f_lo << ", " << f_hi
               << "], the range reachable at reciprocal-angle sum " << g_target;
            throw InfeasibleTarget(os.str());
        }
        f_target = std::clamp(f_target, f_lo, f_hi);
        sol.projected = true;
    }
    // Isosceles targets return the arc endpoint itself.
    if (std::abs(f_target - sol.f_apex) <= tie)
        return finish(arc.apex_side, f_target, g_target, std::move(sol));
    if (std::abs(f_target - sol.f_base) <= tie)
        return finish(arc.base_side, f_target, g_target, std::move(sol));

    // Phase 2: f is strictly monotone in the arc parameter.
    const bool increasing = sol.f_base > sol.f_apex;
    double lo = 0.0, hi = 1.0;
    int it = 0;
    sol.bracket_widths.reserve(64);
    for (; it < reconstruction_iter_cap; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f_value(level_arc_point(arc, mid, &sol.iterations).point);
        if ((fm < f_target) == increasing)
            lo = mid;
        else
            hi = mid;
        sol.bracket_widths.push_back(hi - lo);
    }
    sol.iterations += it;
    if (it == reconstruction_iter_cap)
        throw NoConvergence("arc bisection hit its iteration cap");
    AnglePoint p = level_arc_point(arc, 0.5 * (lo + hi), &sol.iterations).point;

    // Phase 3: local polish.
    int steps = 0;
    p = newton_polish(p, f_target, g_target, 5, steps);
    sol.iterations += steps;
    return finish(p, f_target, g_target, std::move(sol));
}

ReconstructionResult reconstruct_triangle(const InvariantTriple& inv, const ReconstructOptions& opt) {
    if (!(inv.area > 0.0) || !(inv.perimeter > 0.0))
        throw InfeasibleTarget("area and perimeter must be positive");
    const double f_target = inv.perimeter * inv.perimeter / (4.0 * inv.area);
    AngleSolution sol = reconstruct_angles(f_target, inv.reciprocal_angle_sum, opt);

    const Triangle t = triangle_from_angles(sol.angles, inv.area);
    const InvariantTriple got = invariants_of(t);
    const double tol = std::max(1e-6, 2.0 * opt.feasibility_slack);
    const double e_a = std::abs(got.area - inv.area) / inv.area;
    const double e_p = std::abs(got.perimeter - inv.perimeter) / inv.perimeter;
    const double e_r = std::abs(got.reciprocal_angle_sum - inv.reciprocal_angle_sum) / inv.reciprocal_angle_sum;
    if (e_a > tol || e_p > tol || e_r > tol) {
        std::ostringstream os;
        os << "recovered triangle reproduces (A, P, R) only to relative (" << e_a << ", " << e_p << ", " << e_r
           << ")";
        throw InconsistentInvariants(os.str());
    }
    return {t, sol.angles, sol.iterations, sol.f_residual, sol.g_residual, sol.projected};
}

std::vector<AnglePoint> chamber_grid(int grid_n) {
    // Chamber corners: e, (pi/2, pi/2, 0), (pi, 0, 0). The sqrt makes every
    // sample stand for the same area; a linear u piles a whole row onto e.
    const double third = pi / 3.0;
    const Vec3 d1{pi / 2 - third, pi / 2 - third, -third};
    const Vec3 d2{pi - third, -third, -third};
    std::vector<AnglePoint> pts;
    pts.reserve(static_cast<std::size_t>(grid_n) * grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double u = std::sqrt((i + 0.5) / grid_n);
        for (int j = 0; j < grid_n; ++j) {
            const double v = (j + 0.5) / grid_n;
            const double b = third + u * ((1 - v) * d1[1] + v * d2[1]);
            const double c = third + u * ((1 - v) * d1[2] + v * d2[2]);
            pts.emplace_back(pi - b - c, b, c);
        }
    }
    return pts;
}

namespace {

struct Sample {
    Vec3 x;
    double f, g;
};

std::vector<Sample> chamber_samples(int grid_n) {
    if (grid_n < 50)
        throw DomainError("injectivity_scan needs grid_n >= 50");
    const auto pts = chamber_grid(grid_n);
    std::vector<Sample> s;
    s.reserve(pts.size());
    for (const auto& p : pts)
        s.push_back({p.values(), f_value(p), g_value(p)});
    return s;
}

double dist(const Vec3& a, const Vec3& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

} // namespace

InjectivityReport injectivity_scan_serial(int grid_n) {
    const auto s = chamber_samples(grid_n);
    InjectivityReport r{grid_n, s.size(), 0, INFINITY};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (dist(s[i].x, s[j].x) <= injectivity_separation)
                continue;
            const double df = std::abs(s[i].f - s[j].f) / s[i].f;
            const double dg = std::abs(s[i].g - s[j].g) / s[i].g;
            r.min_margin = std::min(r.min_margin, std::max(df, dg));
            if (df < injectivity_tolerance && dg < injectivity_tolerance)
                ++r.collisions;
        }
    }
    return r;
}

InjectivityReport injectivity_scan(int grid_n) {
    const auto s = chamber_samples(grid_n);
    const long n = static_cast<long>(s.size());
    double margin = INFINITY;
    std::size_t collisions = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : margin) reduction(+ : collisions)
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            if (dist(s[i].x, s[j].x) <= injectivity_separation)
                continue;
            const double df = std::abs(s[i].f - s[j].f) / s[i].f;
            const double dg = std::abs(s[i].g - s[j].g) / s[i].g;
            margin = std::min(margin, std::max(df, dg));
            if (df < injectivity_tolerance && dg < injectivity_tolerance)
                ++collisions;
        }
    }
    return {grid_n, s.size(), collisions, margin};
}

} // namespace hear
