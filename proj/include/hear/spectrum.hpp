#pragma once

#include "hear/kernels.hpp"
#include "hear/mesh.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace hear {

// Ascending Dirichlet eigenvalues with provenance metadata.
struct Spectrum {
    std::vector<double> values;
    std::string domain;       // free text, e.g. "triangle 5,4,3"
    std::string method;       // "fem-h" or "exact"
    double h = 0.0;           // mesh size for fem-h, 0 for exact
    bool complete = false;    // no eigenvalues beyond values.back()
    bool extrapolated = false;

    std::size_t size() const { return values.size(); }
};

struct Eigenpairs {
    Spectrum spectrum;
    Eigen::MatrixXd vectors; // interior-node coefficients, mass-orthonormal columns
    FemSystem system;
    int outer_iterations = 0;
};

struct SolverOptions {
    int max_outer_iterations = 500;
    double relative_change_tol = 1e-10;
    std::uint64_t seed = 0x5eed5eedULL;
};

// Shift-invert Lanczos (full reorthogonalization, sparse LDLT inner solve)
// for the k smallest generalized eigenvalues of (K, M).
Eigenpairs solve_eigenpairs(const Mesh& mesh, int k, const SolverOptions& opt = {});
Spectrum solve_lowest(const Mesh& mesh, int k, const SolverOptions& opt = {});

// (pi/leg)^2 (m^2 + n^2), m > n >= 1.
Spectrum exact_half_square(double leg, int k);
Spectrum exact_half_square_below(double leg, double lambda_max);
// (16 pi^2 / (9 side^2)) (m^2 + mn + n^2), m, n >= 1.
Spectrum exact_equilateral(double side, int k);
// pi^2 (1/w^2 + 1/h^2) and its successors; used for domain monotonicity checks.
double exact_rectangle_first(double width, double height);

// Two-term Weyl law N(lam) ~ (A/4pi) lam - (P/4pi) sqrt(lam).
double weyl_count(double area, double perimeter, double lam);

// (4 lambda_fine - lambda_coarse) / 3 per eigenvalue; fine.h must be coarse.h / 2.
Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine);

// Plain text: '#' metadata lines then one eigenvalue per line.
void write_spectrum(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum(std::istream& is);
Spectrum read_spectrum_file(const std::string& path);

} // namespace hear
