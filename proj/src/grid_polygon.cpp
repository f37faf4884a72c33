#include "hear/grid_polygon.hpp"

#include "hear/errors.hpp"
#include "hear/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace hear {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

// Direction code in eighths of a turn, counter-clockwise from +x.
int direction_code(LatticePoint from, LatticePoint to) {
    static constexpr int codes[3][3] = {{5, 4, 3}, {6, -1, 2}, {7, 0, 1}};
    return codes[sign(to.x - from.x) + 1][sign(to.y - from.y) + 1];
}

std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
    return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) - static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

bool on_segment(LatticePoint p, LatticePoint a, LatticePoint b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d) {
    const auto d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
           (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

} // namespace

double SurdLength::value() const { return static_cast<double>(rational) + static_cast<double>(sqrt2) * std::sqrt(2.0); }

GridPolygon GridPolygon::from_vertices(std::vector<LatticePoint> v) {
    const std::size_t n = v.size();
    if (n < 3)
        throw DomainError("a polygon needs at least three vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint a = v[i], b = v[(i + 1) % n];
        const int dx = b.x - a.x, dy = b.y - a.y;
        if (dx == 0 && dy == 0)
            throw DomainError("repeated polygon vertex");
        if (dx != 0 && dy != 0 && std::abs(dx) != std::abs(dy)) {
            std::ostringstream os;
            os << "edge (" << a.x << "," << a.y << ")-(" << b.x << "," << b.y
               << ") is neither axis-parallel nor along unit-cell diagonals";
            throw UnsupportedDomain(os.str());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            const LatticePoint a = v[i], b = v[(i + 1) % n], c = v[j], d = v[(j + 1) % n];
            if (adjacent) {
                // Adjacent edges may only share their common vertex.
                const LatticePoint shared = (j == i + 1) ? b : a;
                const LatticePoint p = (j == i + 1) ? a : b, q = (j == i + 1) ? d : c;
                if (cross(shared, p, q) == 0 && direction_code(shared, p) == direction_code(shared, q))
                    throw DomainError("polygon edges fold back onto each other");
            } else if (segments_touch(a, b, c, d)) {
                throw DomainError("polygon boundary is not simple");
            }
        }
    }
    GridPolygon poly(std::move(v));
    const auto a2 = poly.doubled_area();
    if (a2 == 0)
        throw DomainError("polygon has zero area");
    if (a2 < 0)
        std::reverse(poly.v_.begin(), poly.v_.end());
    return poly;
}

std::int64_t GridPolygon::doubled_area() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const auto& a = v_[i];
        const auto& b = v_[(i + 1) % v_.size()];
        s += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
    }
    return s;
}

SurdLength GridPolygon::perimeter() const {
    SurdLength p;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const auto& a = v_[i];
        const auto& b = v_[(i + 1) % v_.size()];
        const int dx = std::abs(b.x - a.x), dy = std::abs(b.y - a.y);
        if (dx != 0 && dy != 0)
            p.sqrt2 += dx;
        else
            p.rational += dx + dy;
    }
    return p;
}

std::vector<EighthTurns> GridPolygon::interior_angles_eighths() const {
    const std::size_t n = v_.size();
    std::vector<EighthTurns> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& prev = v_[(i + n - 1) % n];
        const auto& cur = v_[i];
        const auto& next = v_[(i + 1) % n];
        int turn = (direction_code(cur, next) - direction_code(prev, cur) + 8) % 8;
        if (turn > 4)
            turn -= 8;
        out[i] = 4 - turn;
    }
    return out;
}

std::vector<double> GridPolygon::interior_angles() const {
    std::vector<double> out;
    for (int k : interior_angles_eighths())
        out.push_back(k * pi / 4.0);
    return out;
}

bool GridPolygon::contains(double x, double y) const {
    bool inside = false;
    const std::size_t n = v_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = v_[i].x, yi = v_[i].y, xj = v_[j].x, yj = v_[j].y;
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi)
            inside = !inside;
    }
    return inside;
}

} // namespace hear
