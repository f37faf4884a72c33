#pragma once

#include "hear/grid_polygon.hpp"
#include "hear/spectrum.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hear {

// The two drums of the Gordon-Webb-Wolpert construction.
std::pair<GridPolygon, GridPolygon> gww_pair();

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Rational&) const = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// sum(pi/alpha - alpha/pi) over interior angles, exact for multiples of pi/4.
Rational corner_sum_exact(const GridPolygon& p);

// True when q is the image of p under one of the 8 lattice isometries
// fixing the origin followed by a translation.
bool lattice_congruent(const GridPolygon& p, const GridPolygon& q);

struct LevelGaps {
    int n = 0;
    std::vector<double> first;
    std::vector<double> second;
    std::vector<double> gaps; // |first - second| / first
    double max_gap = 0.0;
};

struct IsospectralReport {
    int k = 0;
    std::vector<LevelGaps> levels;
    // Max gap strictly decreasing across levels.
    bool shrinking() const;
};

// Throws DomainError unless k >= 1 and levels ascending.
IsospectralReport compare_spectra(int k, const std::vector<int>& levels);

} // namespace hear
