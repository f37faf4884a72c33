#pragma once

#include "hear/geometry.hpp"
#include "hear/grid_polygon.hpp"

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace hear {

using PlanarDomain = std::variant<Triangle, GridPolygon>;

std::string describe(const PlanarDomain& dom);

struct Mesh {
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> elements; // counter-clockwise
    std::vector<char> boundary;               // per node
    double h = 0.0;

    std::size_t interior_count() const;
    double signed_area(std::size_t e) const;
    double total_area() const;
};

// Triangle: affine image of the reference triangle cut into n^2 congruent
// pieces, longest side on the x-axis. GridPolygon: every unit cell split into
// 2n^2 right triangles, with diagonal cells cut exactly along the diagonal.
Mesh build_mesh(const PlanarDomain& dom, int n);

// Vertex coordinates used for triangle meshes: (0,0), (a,0) and the apex.
std::array<std::array<double, 2>, 3> triangle_frame(const Triangle& t);

// Uniform dilation of all node coordinates.
Mesh scaled(const Mesh& m, double s);

} // namespace hear
