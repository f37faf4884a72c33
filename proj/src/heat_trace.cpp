#include "hear/heat_trace.hpp"

#include "hear/errors.hpp"
#include "hear/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hear {

std::optional<WeylParams> estimate_weyl(const Spectrum& spec) {
    const std::size_t n = spec.size();
    if (n < 4)
        return std::nullopt;
    const std::size_t start = n / 2;
    const Eigen::Index rows = static_cast<Eigen::Index>(n - start);
    Eigen::MatrixXd X(rows, 2);
    Eigen::VectorXd y(rows);
    for (std::size_t j = start; j < n; ++j) {
        const double lam = spec.values[j];
        // Scale rows by 1/lambda so the fit is in relative terms.
        const Eigen::Index r = static_cast<Eigen::Index>(j - start);
        X(r, 0) = 1.0;
        X(r, 1) = -1.0 / std::sqrt(lam);
        y[r] = (static_cast<double>(j) + 0.5) / lam;
    }
    const Eigen::Vector2d c = X.colPivHouseholderQr().solve(y);
    if (!(c[0] > 0.0))
        return std::nullopt;
    return WeylParams{4.0 * pi * c[0], 4.0 * pi * std::max(0.0, c[1])};
}

double weyl_tail(const WeylParams& w, double lambda_max, double t) {
    const double a = w.area / (4.0 * pi), b = w.perimeter / (4.0 * pi);
    // N'(lambda) = a - b / (2 sqrt(lambda)); integrate exp(-lambda t) N' over (lambda_max, inf).
    const double lead = a * std::exp(-lambda_max * t) / t;
    const double corr = 0.5 * b * std::sqrt(pi / t) * std::erfc(std::sqrt(lambda_max * t));
    return std::max(0.0, lead - corr);
}

namespace {

double tail_for(const Spectrum& spec, double t, const std::optional<WeylParams>& weyl) {
    if (spec.complete)
        return 0.0;
    if (!weyl || spec.size() == 0)
        return INFINITY;
    return weyl_tail(*weyl, spec.values.back(), t);
}

std::optional<WeylParams> default_weyl(const Spectrum& spec) {
    return spec.complete ? std::nullopt : estimate_weyl(spec);
}

} // namespace

HeatSample synthesize(const Spectrum& spec, double t, const std::optional<WeylParams>& weyl) {
    if (!(t > 0.0))
        throw DomainError("heat trace needs t > 0");
    if (spec.size() == 0)
        throw DomainError("heat trace needs a nonempty spectrum");
    const double ts[1] = {t};
    const double h = heat_sums_serial(spec.values, ts)[0];
    return {t, h, tail_for(spec, t, weyl)};
}

HeatSample synthesize(const Spectrum& spec, double t) { return synthesize(spec, t, default_weyl(spec)); }

std::vector<HeatSample> synthesize_grid(const Spectrum& spec, std::span<const double> times,
                                        const std::optional<WeylParams>& weyl) {
    if (spec.size() == 0)
        throw DomainError("heat trace needs a nonempty spectrum");
    const auto h = heat_sums(spec.values, times);
    std::vector<HeatSample> out;
    out.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out.push_back({times[i], h[i], tail_for(spec, times[i], weyl)});
    return out;
}

std::vector<HeatSample> synthesize_grid_serial(const Spectrum& spec, std::span<const double> times,
                                               const std::optional<WeylParams>& weyl) {
    if (spec.size() == 0)
        throw DomainError("heat trace needs a nonempty spectrum");
    const auto h = heat_sums_serial(spec.values, times);
    std::vector<HeatSample> out;
    out.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out.push_back({times[i], h[i], tail_for(spec, times[i], weyl)});
    return out;
}

std::vector<double> log_spaced(double t_min, double t_max, int count) {
    std::vector<double> t(count);
    const double l0 = std::log(t_min), l1 = std::log(t_max);
    for (int i = 0; i < count; ++i)
        t[i] = count == 1 ? t_min : std::exp(l0 + (l1 - l0) * i / (count - 1));
    if (count > 1) {
        t.front() = t_min;
        t.back() = t_max;
    }
    return t;
}

HeatFit fit_expansion(std::span<const HeatSample> samples) {
    if (static_cast<int>(samples.size()) < min_fit_samples) {
        std::ostringstream os;
        os << "fit needs at least " << min_fit_samples << " samples, got " << samples.size();
        throw IllConditionedWindow(os.str());
    }
    double t_min = INFINITY, t_max = 0.0;
    for (const auto& s : samples) {
        if (!(s.t > 0.0) || !(s.h > 0.0))
            throw DomainError("heat samples need t > 0 and h > 0");
        t_min = std::min(t_min, s.t);
        t_max = std::max(t_max, s.t);
        if (!(s.tail_bound <= tail_fraction_limit * s.h)) {
            std::ostringstream os;
            os << "truncation tail " << s.tail_bound << " at t = " << s.t << " exceeds " << tail_fraction_limit
               << " * h = " << tail_fraction_limit * s.h;
            throw TailTooLarge(os.str());
        }
    }
    if (!(t_max >= 10.0 * t_min * (1.0 - 1e-9)))
        throw IllConditionedWindow("fit window must span at least a decade in t");

    const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n), rhs = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        y[i] = (s.h + s.tail_bound) * s.t;
        X(i, 0) = 1.0 / y[i];
        X(i, 1) = std::sqrt(s.t) / y[i];
        X(i, 2) = s.t / y[i];
    }
    const Eigen::Vector3d scale = X.colwise().norm().cwiseInverse().transpose();
    const Eigen::MatrixXd Xs = X * scale.asDiagonal();
    const Eigen::Matrix3d normal = Xs.transpose() * Xs;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(normal, Eigen::EigenvaluesOnly);
    const double cond = es.eigenvalues()[2] / std::max(es.eigenvalues()[0], 0.0);
    if (!(cond <= condition_limit)) {
        std::ostringstream os;
        os << "normal system condition " << cond << " exceeds " << condition_limit;
        throw IllConditionedWindow(os.str());
    }
    const Eigen::Vector3d z = Xs.colPivHouseholderQr().solve(rhs);
    const Eigen::Vector3d c = scale.asDiagonal() * z;

    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = samples[static_cast<std::size_t>(i)].t;
        const double model = c[0] + c[1] * std::sqrt(t) + c[2] * t;
        worst = std::max(worst, std::abs(model - y[i]) / y[i]);
    }
    return {{c[0], c[1], c[2]}, t_min, t_max, worst, cond};
}

InvariantTriple hear_invariants(const HeatFit& fit) {
    const InvariantTriple inv = invariants_from_coefficients(fit.coefficients);
    if (!(inv.area > 0.0) || !(inv.perimeter > 0.0) || !(inv.reciprocal_angle_sum >= 9.0 / pi - reciprocal_sum_noise)) {
        std::ostringstream os;
        os << "fitted coefficients give A = " << inv.area << ", P = " << inv.perimeter
           << ", R = " << inv.reciprocal_angle_sum << ", which no triangle has";
        throw NonPhysical(os.str());
    }
    return inv;
}

FitWindow select_window(const Spectrum& spec, const std::optional<WeylParams>& weyl) {
    if (spec.size() == 0)
        throw DomainError("empty spectrum");
    const double lam1 = spec.values.front(), lam_max = spec.values.back();
    const double target = 0.5 * tail_fraction_limit;
    auto ratio = [&](double t) {
        const HeatSample s = synthesize(spec, t, weyl);
        return s.tail_bound / s.h;
    };

    double t_tail;
    if (spec.complete) {
        t_tail = 1.0 / lam_max;
    } else {
        double lo = std::log(1e-6 / lam_max), hi = std::log(100.0 / lam1);
        if (!(ratio(std::exp(hi)) <= target)) {
            std::ostringstream os;
            os << "spectrum of " << spec.size() << " eigenvalues cannot bound the truncation tail below "
               << tail_fraction_limit << " * h at any usable t";
            throw TailTooLarge(os.str());
        }
        for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
            const double mid = 0.5 * (lo + hi);
            (ratio(std::exp(mid)) <= target ? hi : lo) = mid;
        }
        t_tail = std::exp(hi);
    }

    auto check_small_time = [&](double t_max) {
        if (lam1 * t_max > small_time_limit) {
            std::ostringstream os;
            os << "truncation tail is controlled only for t >= " << t_tail << ", outside the small-t regime (lambda_1 t_max = "
               << lam1 * t_max << " > " << small_time_limit << "); the spectrum has too few eigenvalues";
            throw TailTooLarge(os.str());
        }
    };
    check_small_time(10.0 * t_tail);

    // Provisional fit to locate where the constant coefficient becomes visible.
    const auto ts = log_spaced(t_tail, 10.0 * t_tail, 32);
    const auto samples = synthesize_grid(spec, ts, weyl);
    const HeatFit pre = fit_expansion(samples);
    const auto& c = pre.coefficients;
    auto share = [&](double t) {
        const double h = c.a0 / t + c.a_half / std::sqrt(t) + c.a1;
        return std::abs(c.a1) / std::abs(h);
    };
    double t_lo = t_tail;
    if (share(t_tail) < a1_share) {
        double lo = t_tail, hi = t_tail;
        int grow = 0;
        while (share(hi) < a1_share && grow++ < 60)
            hi *= 2.0;
        for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
            const double mid = std::sqrt(lo * hi);
            (share(mid) >= a1_share ? hi : lo) = mid;
        }
        t_lo = hi;
    }
    check_small_time(10.0 * t_lo);
    return {t_lo, 10.0 * t_lo};
}

HearingResult hear_triangle(const Spectrum& spec, const HearingOptions& opt) {
    const auto weyl = default_weyl(spec);
    const FitWindow w = opt.window ? *opt.window : select_window(spec, weyl);
    const auto ts = log_spaced(w.t_min, w.t_max, std::max(opt.samples, min_fit_samples));
    const auto samples = synthesize_grid(spec, ts, weyl);
    const HeatFit fit = fit_expansion(samples);
    const InvariantTriple heard = hear_invariants(fit);
    ReconstructOptions ro;
    ro.feasibility_slack = opt.feasibility_slack;
    return {w, fit, heard, reconstruct_triangle(heard, ro)};
}

} // namespace hear
