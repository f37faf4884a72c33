#include "hear/angle_space.hpp"

#include "hear/bisect.hpp"
#include "hear/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hear {

namespace {

constexpr double pi_lo = 1.2246467991473532e-16; // pi - double(pi)
constexpr double endpoint_switch = 1e-3;

double sq(double x) { return x * x; }

// 1/sin^2 y - 1/y^2 for small y.
double G_taylor(double y) {
    const double y2 = y * y;
    return 1.0 / 3.0 + y2 * (1.0 / 15.0 + y2 * (2.0 / 189.0 + y2 * (1.0 / 675.0 + y2 * (2.0 / 10395.0))));
}

// Sum_{k >= k0} (-1)^(k - k0) x^(2k+1) / (2k+1)!, the alternating sine tail.
double sine_tail(double x, int k0) {
    double term = x;
    for (int j = 1; j <= 2 * k0; ++j)
        term *= x / (j + 1);
    double sum = 0.0;
    for (int k = k0; k < k0 + 40; ++k) {
        sum += term;
        term *= -x * x / ((2.0 * k + 2) * (2.0 * k + 3));
        if (std::abs(term) <= 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace

double f_value(const AnglePoint& p) {
    double s = 0.0;
    for (double x : p.values())
        s += 1.0 / std::tan(0.5 * x);
    return s;
}

double g_value(const AnglePoint& p) { return 1.0 / p.alpha() + 1.0 / p.beta() + 1.0 / p.gamma(); }

Vec3 grad_f(const AnglePoint& p) {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = -0.5 / sq(std::sin(0.5 * p[i]));
    return r;
}

Vec3 grad_g(const AnglePoint& p) {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = -1.0 / sq(p[i]);
    return r;
}

Eigen::Matrix3d hessian_g(const Vec3& x) {
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        if (!(x[i] > 0.0))
            throw DomainError("hessian_g requires a point of the positive octant");
        h(i, i) = 2.0 / (x[i] * x[i] * x[i]);
    }
    return h;
}

namespace {

double det_rows(const Vec3& u, const Vec3& v, const Vec3& w) {
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
           u[2] * (v[0] * w[1] - v[1] * w[0]);
}

Vec3 unit(Vec3 v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& x : v)
        x /= n;
    return v;
}

} // namespace

double independence_det(const AnglePoint& p) {
    // Expanded along the all-ones row so equal columns cancel exactly.
    const Vec3 u = grad_f(p), v = grad_g(p);
    return u[0] * (v[1] - v[2]) - u[1] * (v[0] - v[2]) + u[2] * (v[0] - v[1]);
}

double normalized_independence_det(const AnglePoint& p) {
    const Vec3 u = unit(grad_f(p)), v = unit(grad_g(p)), w = unit({1.0, 1.0, 1.0});
    if (is_isosceles(p, 0.0))
        return 0.0;
    return det_rows(u, v, w);
}

bool is_isosceles(const AnglePoint& p, double threshold) {
    return std::abs(p.alpha() - p.beta()) <= threshold || std::abs(p.beta() - p.gamma()) <= threshold ||
           std::abs(p.alpha() - p.gamma()) <= threshold;
}

double G_closed(double x) {
    if (!(x > 0.0 && x < pi)) {
        std::ostringstream os;
        os << "G is defined on (0, pi), got " << x;
        throw DomainError(os.str());
    }
    if (x < endpoint_switch)
        return G_taylor(x);
    if (pi - x < endpoint_switch) {
        const double y = (pi - x) + pi_lo;
        return 1.0 / (y * y) + G_taylor(y) - 1.0 / (x * x);
    }
    // (x - sin x)(x + sin x) / (x sin x)^2 avoids the cancellation of the naive difference.
    const double s = x > pi / 2 ? std::sin((pi - x) + pi_lo) : std::sin(x);
    double d;
    if (x < 1.0) {
        // x - sin x = x^3/3! - x^5/5! + ...
        const double x2 = x * x;
        double term = x * x2 / 6.0;
        d = 0.0;
        for (int k = 4; std::abs(term) > 1e-18 * std::abs(d); k += 2) {
            d += term;
            term *= -x2 / (k * (k + 1));
        }
    } else {
        d = x - s;
    }
    return d * (x + s) / sq(x * s);
}

double G_series(double x, int K) {
    if (!(x > 0.0 && x < pi))
        throw DomainError("G_series is defined on (0, pi)");
    if (K < 1)
        throw DomainError("G_series needs truncation order K >= 1");
    double s = 0.0;
    for (int k = K; k >= 1; --k)
        s += 1.0 / sq(x + k * pi) + 1.0 / sq(x - k * pi);
    return s;
}

double convexity_margin(double x) {
    if (x < 0.1) {
        const double x2 = x * x;
        const double x8 = x2 * x2 * x2 * x2;
        return x8 * (1.0 / 15.0 +
                     x2 * (2.0 / 105.0 +
                           x2 * (-32.0 / 4725.0 + x2 * (136.0 / 155925.0 + x2 * (-14563.0 / 212837625.0)))));
    }
    const double s2 = sq(std::sin(x));
    const double x4 = sq(x * x);
    return 3.0 * x4 - 3.0 * s2 * s2 - 2.0 * x4 * s2;
}

double sine_bound_margin(double x) { return sine_tail(x, 3); }

GShapeReport g_shape_witness(int grid_n) {
    if (grid_n < 100)
        throw DomainError("g_shape_witness needs grid_n >= 100");
    GShapeReport r;
    r.grid_n = grid_n;
    const double h = pi / (grid_n + 1);
    std::vector<double> G(grid_n);
    for (int i = 0; i < grid_n; ++i)
        G[i] = G_closed((i + 1) * h);

    r.min_first_difference = INFINITY;
    for (int i = 0; i + 1 < grid_n; ++i)
        r.min_first_difference = std::min(r.min_first_difference, G[i + 1] - G[i]);
    r.min_second_difference = INFINITY;
    for (int i = 1; i + 1 < grid_n; ++i)
        r.min_second_difference = std::min(r.min_second_difference, (G[i + 1] - G[i]) - (G[i] - G[i - 1]));
    r.min_convexity_margin = INFINITY;
    r.min_sine_margin = INFINITY;
    for (int i = 0; i < grid_n; ++i) {
        const double x = (i + 1) * h;
        r.min_convexity_margin = std::min(r.min_convexity_margin, convexity_margin(x) / (3.0 * sq(x * x)));
        r.min_sine_margin = std::min(r.min_sine_margin, sine_bound_margin(x) / x);
    }
    r.increasing = r.min_first_difference > 0.0;
    r.convex = r.min_second_difference > 0.0;
    r.convexity_inequality = r.min_convexity_margin > 0.0;
    r.sine_inequality = r.min_sine_margin > 0.0;
    return r;
}

std::pair<AnglePoint, ChamberLabel> canonicalize(const AnglePoint& p) {
    ChamberLabel label;
    auto& perm = label.perm;
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) { return p[i] > p[j]; });
    return {AnglePoint(p[perm[0]], p[perm[1]], p[perm[2]]), label};
}

bool in_closed_canonical_chamber(const AnglePoint& p) {
    return p.alpha() >= p.beta() && p.beta() >= p.gamma();
}

namespace {

constexpr int endpoint_iter_cap = 200;

AnglePoint along_ray(const Vec3& dir, double tau) {
    const double third = pi / 3.0;
    const double b = third + tau * dir[1], c = third + tau * dir[2];
    // Recompute the first coordinate from the sum so the simplex constraint holds to rounding.
    return {pi - b - c, b, c};
}

// Radial parameter where g = s along e + tau * dir (dir sums to zero).
double ray_level(const Vec3& dir, double s, int& iters) {
    const double third = pi / 3.0;
    double dmin = 0.0;
    for (double d : dir)
        dmin = std::min(dmin, d);
    // At tau_hi the smallest coordinate is 1/(2s), so g >= 2s > s.
    const double tau_hi = (third - 0.5 / s) / (-dmin);
    return detail::bisect([&](double tau) { return g_value(along_ray(dir, tau)) - s; }, 0.0, tau_hi,
                          endpoint_iter_cap, iters);
}

} // namespace

LevelArc level_arc(double s) {
    const double g_min = 9.0 / pi;
    if (!(s >= g_min)) {
        std::ostringstream os;
        os.precision(17);
        os << "level " << s << " is below the minimum 9/pi of the reciprocal-angle sum";
        throw InfeasibleTarget(os.str());
    }
    // alpha = beta side: direction (1, 1, -2); beta = gamma side: (2, -1, -1).
    int it1 = 0, it2 = 0;
    const Vec3 d_apex{1.0, 1.0, -2.0}, d_base{2.0, -1.0, -1.0};
    const double t1 = ray_level(d_apex, s, it1);
    const double t2 = ray_level(d_base, s, it2);
    const double third = pi / 3.0;
    const double x = third + t1;     // (x, x, pi - 2x)
    const double y = third - t2;     // (pi - 2y, y, y)
    return {s, AnglePoint(x, x, pi - 2.0 * x), AnglePoint(pi - 2.0 * y, y, y), it1 + it2};
}

LevelCurvePoint level_arc_point(const LevelArc& arc, double u, int* iterations) {
    const double third = pi / 3.0;
    Vec3 dir;
    for (int i = 0; i < 3; ++i)
        dir[i] = (1.0 - u) * arc.apex_side[i] + u * arc.base_side[i] - third;
    const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (n == 0.0)
        return {AnglePoint::equilateral(), arc.level, u};
    for (double& d : dir)
        d /= n;
    int it = 0;
    const double tau = ray_level(dir, arc.level, it);
    if (iterations)
        *iterations += it;
    return {along_ray(dir, tau), arc.level, u};
}

} // namespace hear
