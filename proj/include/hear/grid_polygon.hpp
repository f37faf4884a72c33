#pragma once

#include <cstdint>
#include <vector>

namespace hear {

struct LatticePoint {
    int x = 0;
    int y = 0;
    bool operator==(const LatticePoint&) const = default;
    auto operator<=>(const LatticePoint&) const = default;
};

// Interior angle at a lattice-polygon vertex, in units of pi/4.
using EighthTurns = int;

// Perimeter a + b*sqrt(2) with integer a, b, compared exactly.
struct SurdLength {
    std::int64_t rational = 0;
    std::int64_t sqrt2 = 0;
    double value() const;
    bool operator==(const SurdLength&) const = default;
};

// Simple lattice polygon whose edges are axis-parallel or run along unit-cell
// diagonals. Vertices are stored counter-clockwise.
class GridPolygon {
public:
    // Throws UnsupportedDomain for other edge directions and DomainError for
    // degenerate or self-intersecting input.
    static GridPolygon from_vertices(std::vector<LatticePoint> vertices);

    const std::vector<LatticePoint>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }

    // Twice the area, exact.
    std::int64_t doubled_area() const;
    double area() const { return 0.5 * static_cast<double>(doubled_area()); }
    SurdLength perimeter() const;
    std::vector<EighthTurns> interior_angles_eighths() const;
    std::vector<double> interior_angles() const;

    bool contains(double x, double y) const;

private:
    explicit GridPolygon(std::vector<LatticePoint> v) : v_(std::move(v)) {}
    std::vector<LatticePoint> v_;
};

} // namespace hear
