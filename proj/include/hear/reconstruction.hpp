#pragma once

#include "hear/angle_space.hpp"
#include "hear/geometry.hpp"

#include <vector>

namespace hear {

struct ReconstructOptions {
    // Targets outside the feasible set by at most this relative amount are
    // projected onto it (rounded CLI input, fitted coefficients). Zero is strict.
    double feasibility_slack = 0.0;
};

struct AngleSolution {
    AnglePoint angles;              // canonical chamber
    int iterations = 0;             // bisection + Newton steps
    double f_residual = 0.0;        // |f - f*| / f*
    double g_residual = 0.0;        // |g - g*| / g*
    double f_apex = 0.0;            // f at the alpha = beta end of the arc
    double f_base = 0.0;            // f at the beta = gamma end of the arc
    std::vector<double> bracket_widths{}; // arc-parameter bracket after each bisection step
    bool projected = false;         // a target was moved onto the feasible set
};

struct ReconstructionResult {
    Triangle triangle;
    AnglePoint angles;
    int iterations = 0;
    double f_residual = 0.0;
    double g_residual = 0.0;
    bool projected = false;
};

inline constexpr int reconstruction_iter_cap = 200;
inline constexpr double reconstruction_residual_tol = 1e-10;

// Unique canonical-chamber point with f = f_target, g = g_target.
// Level arc endpoints by radial bisection, bisection in the arc parameter
// (f is strictly monotone on the arc), then at most five Newton steps.
AngleSolution reconstruct_angles(double f_target, double g_target, const ReconstructOptions& opt = {});

// Triangle with the given area, perimeter and reciprocal-angle sum.
ReconstructionResult reconstruct_triangle(const InvariantTriple& inv, const ReconstructOptions& opt = {});

struct InjectivityReport {
    int grid_n = 0;
    std::size_t points = 0;
    std::size_t collisions = 0;
    // Smallest max(|df|/f, |dg|/g) over pairs farther apart than the separation.
    double min_margin = 0.0;
    bool passed() const { return collisions == 0; }
};

inline constexpr double injectivity_separation = 1e-3;
inline constexpr double injectivity_tolerance = 1e-6;

// grid_n x grid_n equal-area sample points of the open canonical chamber.
std::vector<AnglePoint> chamber_grid(int grid_n);

// Pairwise scan for (f, g) collisions; parallel over the outer index.
InjectivityReport injectivity_scan(int grid_n);
InjectivityReport injectivity_scan_serial(int grid_n);

} // namespace hear
