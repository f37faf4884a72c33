#include "hear/mesh.hpp"

#include "hear/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace hear {

std::string describe(const PlanarDomain& dom) {
    std::ostringstream os;
    os.precision(17);
    if (const auto* t = std::get_if<Triangle>(&dom)) {
        os << "triangle " << t->a() << "," << t->b() << "," << t->c();
    } else {
        const auto& p = std::get<GridPolygon>(dom);
        os << "gridpolygon";
        for (const auto& v : p.vertices())
            os << " " << v.x << "," << v.y;
    }
    return os.str();
}

std::size_t Mesh::interior_count() const {
    return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), 0));
}

double Mesh::signed_area(std::size_t e) const {
    const auto& el = elements[e];
    const auto& p = nodes[el[0]];
    const auto& q = nodes[el[1]];
    const auto& r = nodes[el[2]];
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
}

double Mesh::total_area() const {
    double s = 0.0;
    for (std::size_t e = 0; e < elements.size(); ++e)
        s += signed_area(e);
    return s;
}

std::array<std::array<double, 2>, 3> triangle_frame(const Triangle& t) {
    const double a = t.a(), b = t.b(), c = t.c();
    const double x = (a * a + b * b - c * c) / (2.0 * a);
    const double y = 2.0 * area_of(t) / a;
    return {{{0.0, 0.0}, {a, 0.0}, {x, y}}};
}

namespace {

void mark_boundary(Mesh& m) {
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& el : m.elements)
        for (int k = 0; k < 3; ++k) {
            int i = el[k], j = el[(k + 1) % 3];
            if (i > j)
                std::swap(i, j);
            ++edge_use[{i, j}];
        }
    m.boundary.assign(m.nodes.size(), 0);
    for (const auto& [e, count] : edge_use)
        if (count == 1)
            m.boundary[e.first] = m.boundary[e.second] = 1;
}

Mesh mesh_triangle(const Triangle& t, int n) {
    const auto f = triangle_frame(t);
    Mesh m;
    m.h = t.a() / n;
    auto id = [n](int i, int j) { return j * (n + 1) - j * (j - 1) / 2 + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i + j <= n; ++i) {
            const double s = static_cast<double>(i) / n, r = static_cast<double>(j) / n;
            m.nodes.push_back({f[0][0] + s * (f[1][0] - f[0][0]) + r * (f[2][0] - f[0][0]),
                               f[0][1] + s * (f[1][1] - f[0][1]) + r * (f[2][1] - f[0][1])});
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i + j < n; ++i) {
            m.elements.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            if (i + j < n - 1)
                m.elements.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    mark_boundary(m);
    return m;
}

// Quarters of a unit cell cut by both diagonals.
enum Quarter { South = 1, East = 2, North = 4, West = 8 };

Mesh mesh_grid_polygon(const GridPolygon& poly, int n) {
    int x0 = poly.vertices()[0].x, x1 = x0, y0 = poly.vertices()[0].y, y1 = y0;
    for (const auto& v : poly.vertices()) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    Mesh m;
    m.h = 1.0 / n;
    std::unordered_map<long long, int> ids;
    const long long stride = static_cast<long long>(x1 - x0) * n + 1;
    auto node = [&](long long X, long long Y) {
        const long long key = (Y - static_cast<long long>(y0) * n) * stride + (X - static_cast<long long>(x0) * n);
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(m.nodes.size()));
        if (inserted)
            m.nodes.push_back({static_cast<double>(X) / n, static_cast<double>(Y) / n});
        return it->second;
    };

    for (int cy = y0; cy < y1; ++cy)
        for (int cx = x0; cx < x1; ++cx) {
            int mask = 0;
            if (poly.contains(cx + 0.5, cy + 1.0 / 6.0)) mask |= South;
            if (poly.contains(cx + 5.0 / 6.0, cy + 0.5)) mask |= East;
            if (poly.contains(cx + 0.5, cy + 5.0 / 6.0)) mask |= North;
            if (poly.contains(cx + 1.0 / 6.0, cy + 0.5)) mask |= West;
            if (mask == 0)
                continue;
            // keep(u, v) tests a sub-triangle centroid in local cell coordinates.
            bool slash = true; // sub-squares cut along the (0,0)-(1,1) direction
            std::function<bool(double, double)> keep;
            switch (mask) {
            case South | East | North | West: keep = [](double, double) { return true; }; break;
            case South | East: keep = [](double u, double v) { return v < u; }; break;
            case North | West: keep = [](double u, double v) { return v > u; }; break;
            case South | West: slash = false; keep = [](double u, double v) { return u + v < 1.0; }; break;
            case North | East: slash = false; keep = [](double u, double v) { return u + v > 1.0; }; break;
            default: {
                std::ostringstream os;
                os << "cell (" << cx << "," << cy << ") is not a full cell or a half cell";
                throw UnsupportedDomain(os.str());
            }
            }
            for (int q = 0; q < n; ++q)
                for (int p = 0; p < n; ++p) {
                    const long long X = static_cast<long long>(cx) * n + p, Y = static_cast<long long>(cy) * n + q;
                    std::array<std::array<long long, 2>, 3> t1, t2;
                    if (slash) {
                        t1 = {{{X, Y}, {X + 1, Y}, {X + 1, Y + 1}}};
                        t2 = {{{X, Y}, {X + 1, Y + 1}, {X, Y + 1}}};
                    } else {
                        t1 = {{{X, Y}, {X + 1, Y}, {X, Y + 1}}};
                        t2 = {{{X + 1, Y}, {X + 1, Y + 1}, {X, Y + 1}}};
                    }
                    for (const auto& tri : {t1, t2}) {
                        const double u = (tri[0][0] + tri[1][0] + tri[2][0]) / (3.0 * n) - cx;
                        const double v = (tri[0][1] + tri[1][1] + tri[2][1]) / (3.0 * n) - cy;
                        if (!keep(u, v))
                            continue;
                        m.elements.push_back({node(tri[0][0], tri[0][1]), node(tri[1][0], tri[1][1]),
                                              node(tri[2][0], tri[2][1])});
                    }
                }
        }
    mark_boundary(m);
    return m;
}

} // namespace

Mesh build_mesh(const PlanarDomain& dom, int n) {
    if (n < 1)
        throw DomainError("mesh subdivision count must be positive");
    if (const auto* t = std::get_if<Triangle>(&dom))
        return mesh_triangle(*t, n);
    return mesh_grid_polygon(std::get<GridPolygon>(dom), n);
}

Mesh scaled(const Mesh& m, double s) {
    Mesh r = m;
    for (auto& p : r.nodes) {
        p[0] *= s;
        p[1] *= s;
    }
    r.h *= s;
    return r;
}

} // namespace hear
