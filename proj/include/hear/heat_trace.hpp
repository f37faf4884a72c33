#pragma once

#include "hear/geometry.hpp"
#include "hear/reconstruction.hpp"
#include "hear/spectrum.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hear {

struct HeatSample {
    double t;
    double h;          // partial sum over the available eigenvalues
    double tail_bound; // two-term Weyl estimate of the missing terms
};

// Two-term Weyl parameters used for tail completion.
struct WeylParams {
    double area;
    double perimeter;
};

// Least-squares fit of the counting function j - 1/2 = (A/4pi) lambda_j - (P/4pi) sqrt(lambda_j)
// over the upper half of the spectrum. Needs at least 4 eigenvalues.
std::optional<WeylParams> estimate_weyl(const Spectrum& spec);

// Integral of exp(-lambda t) dN_Weyl(lambda) over (lambda_max, inf), clamped at 0.
double weyl_tail(const WeylParams& w, double lambda_max, double t);

HeatSample synthesize(const Spectrum& spec, double t);
HeatSample synthesize(const Spectrum& spec, double t, const std::optional<WeylParams>& weyl);

std::vector<HeatSample> synthesize_grid(const Spectrum& spec, std::span<const double> times,
                                        const std::optional<WeylParams>& weyl);
std::vector<HeatSample> synthesize_grid_serial(const Spectrum& spec, std::span<const double> times,
                                               const std::optional<WeylParams>& weyl);

std::vector<double> log_spaced(double t_min, double t_max, int count);

struct HeatFit {
    HeatCoefficients coefficients;
    double t_min;
    double t_max;
    double max_residual; // max relative residual over the samples
    double condition;    // of the column-equilibrated normal matrix
};

inline constexpr double tail_fraction_limit = 1e-8;
inline constexpr double condition_limit = 1e12;
inline constexpr int min_fit_samples = 8;

// Weighted least squares of (h + tail) t against {1, sqrt t, t}, weights
// 1/((h + tail) t)^2, i.e. relative residuals.
HeatFit fit_expansion(std::span<const HeatSample> samples);

inline constexpr double reciprocal_sum_noise = 0.05;

InvariantTriple hear_invariants(const HeatFit& fit);

struct FitWindow {
    double t_min;
    double t_max;
};

// Smallest admissible t by the tail criterion, raised until the constant
// coefficient carries at least 1% of h; one decade wide. The window must sit
// in the small-t regime: lambda_1 * t_max <= small_time_limit.
inline constexpr double small_time_limit = 2.0;
inline constexpr double a1_share = 0.01;
FitWindow select_window(const Spectrum& spec, const std::optional<WeylParams>& weyl);

struct HearingOptions {
    std::optional<FitWindow> window;
    int samples = 32;
    // Fitted invariants are projected onto the feasible set within this slack.
    double feasibility_slack = 1e-2;
};

struct HearingResult {
    FitWindow window;
    HeatFit fit;
    InvariantTriple heard;
    ReconstructionResult reconstruction;
};

// synthesize -> fit_expansion -> hear_invariants -> reconstruct_triangle.
HearingResult hear_triangle(const Spectrum& spec, const HearingOptions& opt = {});

} // namespace hear
