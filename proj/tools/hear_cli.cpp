#include "hear/billiards.hpp"
#include "hear/errors.hpp"
#include "hear/heat_trace.hpp"
#include "hear/isospectral.hpp"
#include "hear/mesh.hpp"
#include "hear/reconstruction.hpp"
#include "hear/spectrum.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hear;

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(9) << x;
    return os.str();
}

template <class T>
std::vector<T> parse_list(const std::string& opt, const std::string& text) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos)
            end = text.size();
        T v{};
        const char* first = text.data() + pos;
        const char* last = text.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || first == last) {
            std::ostringstream os;
            os << "line 1, column " << (ptr - text.data()) + 1 << ": " << opt << " expects a comma-separated list of "
               << (std::is_integral_v<T> ? "integers" : "numbers") << ", got '" << text << "'";
            throw ParseError(os.str());
        }
        out.push_back(v);
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return out;
}

Triangle parse_sides(const std::string& text) {
    const auto s = parse_list<double>("--sides", text);
    if (s.size() != 3)
        throw ParseError("line 1, column 1: --sides expects exactly three values, got " + std::to_string(s.size()));
    return Triangle::from_sides(s[0], s[1], s[2]);
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty())
            return;
        file.open(path);
        if (!file)
            throw DomainError("cannot open output file " + path);
        os = &file;
    }
    std::ostream& operator()() { return *os; }
};

void print_triangle(std::ostream& os, const Triangle& t) {
    const auto ang = angles_of(t);
    os << "a=" << num(t.a()) << "\nb=" << num(t.b()) << "\nc=" << num(t.c()) << "\n";
    os << "alpha=" << num(ang.alpha()) << "\nbeta=" << num(ang.beta()) << "\ngamma=" << num(ang.gamma()) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat-trace invariants of triangles: compute, reconstruct, and hear them from spectra."};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    std::string output;
    app.add_option("--threads", threads, "OpenMP threads for solver kernels (0 = default)")->check(CLI::NonNegativeNumber);
    app.add_option("--output", output, "Write the report to this file instead of stdout");

    // invariants
    auto* inv = app.add_subcommand("invariants", "Area, perimeter, reciprocal-angle sum and heat coefficients");
    std::string inv_sides, inv_angles;
    double inv_area = 0.0;
    auto* o_sides = inv->add_option("--sides", inv_sides, "a,b,c");
    auto* o_angles = inv->add_option("--angles", inv_angles, "alpha,beta,gamma in radians (with --area)");
    auto* o_area = inv->add_option("--area", inv_area, "area for --angles");
    o_sides->excludes(o_angles);
    o_angles->needs(o_area);

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Triangle from area, perimeter and reciprocal-angle sum");
    double rA = 0.0, rP = 0.0, rR = 0.0, slack = 1e-6;
    rec->add_option("--A", rA, "area")->required();
    rec->add_option("--P", rP, "perimeter")->required();
    rec->add_option("--R", rR, "sum of reciprocal angles")->required();
    rec->add_option("--slack", slack, "relative distance to the feasible set still accepted")->capture_default_str();

    // eigs
    auto* eig = app.add_subcommand("eigs", "Dirichlet eigenvalues of a triangle or a GWW drum");
    std::string e_sides;
    double e_half = 0.0, e_equi = 0.0;
    int e_gww = 0, e_n = 32, e_k = 10;
    bool e_exact = false, e_rich = false;
    double e_lmax = 0.0;
    auto* g1 = eig->add_option("--sides", e_sides, "triangle a,b,c");
    auto* g2 = eig->add_option("--half-square", e_half, "right isosceles triangle with this leg");
    auto* g3 = eig->add_option("--equilateral", e_equi, "equilateral triangle with this side");
    auto* g4 = eig->add_option("--gww", e_gww, "GWW drum 1 or 2")->check(CLI::Range(1, 2));
    g1->excludes(g2, g3, g4);
    g2->excludes(g3, g4);
    g3->excludes(g4);
    eig->add_option("-n", e_n, "mesh subdivisions")->capture_default_str()->check(CLI::PositiveNumber);
    eig->add_option("-k", e_k, "number of eigenvalues")->capture_default_str()->check(CLI::PositiveNumber);
    eig->add_flag("--exact", e_exact, "closed-form spectrum (half-square, equilateral)");
    eig->add_option("--lambda-max", e_lmax, "with --exact --half-square: every eigenvalue up to this bound");
    eig->add_flag("--richardson", e_rich, "extrapolate from meshes n and 2n");

    // hear
    auto* hr = app.add_subcommand("hear", "Recover a triangle from a spectrum file");
    std::string h_file;
    double h_tmin = 0.0, h_tmax = 0.0;
    int h_samples = 32;
    hr->add_option("file", h_file, "spectrum file")->required();
    auto* o_tmin = hr->add_option("--t-min", h_tmin, "fit window start");
    auto* o_tmax = hr->add_option("--t-max", h_tmax, "fit window end");
    o_tmin->needs(o_tmax);
    o_tmax->needs(o_tmin);
    hr->add_option("--samples", h_samples, "fit samples")->capture_default_str();

    // billiard
    auto* bil = app.add_subcommand("billiard", "Shortest closed billiard path");
    std::string b_sides;
    bil->add_option("--sides", b_sides, "a,b,c")->required();

    // isodemo
    auto* iso = app.add_subcommand("isodemo", "Eigenvalue gaps of the two GWW drums under refinement");
    int i_k = 10;
    std::string i_levels = "8,16,32";
    iso->add_option("-k", i_k, "number of eigenvalues")->capture_default_str();
    iso->add_option("--levels", i_levels, "ascending mesh subdivisions")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (threads > 0)
        omp_set_num_threads(threads);

    std::string stage = "input";
    try {
        Output out;
        out.open(output);

        if (inv->parsed()) {
            std::optional<Triangle> t;
            if (!inv_sides.empty()) {
                t = parse_sides(inv_sides);
            } else if (!inv_angles.empty()) {
                const auto a = parse_list<double>("--angles", inv_angles);
                if (a.size() != 3)
                    throw ParseError("line 1, column 1: --angles expects exactly three values");
                t = triangle_from_angles(AnglePoint(a[0], a[1], a[2]), inv_area);
            } else {
                throw ParseError("line 1, column 1: invariants needs --sides or --angles with --area");
            }
            stage = "invariants";
            const auto v = invariants_of(*t);
            const auto h = heat_coefficients(v);
            out() << "A=" << num(v.area) << "\nP=" << num(v.perimeter) << "\nR=" << num(v.reciprocal_angle_sum)
                  << "\nf=" << num(v.perimeter * v.perimeter / (4.0 * v.area)) << "\na0=" << num(h.a0)
                  << "\na_half=" << num(h.a_half) << "\na1=" << num(h.a1) << "\n";
        } else if (rec->parsed()) {
            stage = "reconstruct";
            ReconstructOptions ro;
            ro.feasibility_slack = slack;
            const auto r = reconstruct_triangle({rA, rP, rR}, ro);
            print_triangle(out(), r.triangle);
            out() << "f_residual=" << num(r.f_residual) << "\ng_residual=" << num(r.g_residual)
                  << "\niterations=" << r.iterations << "\nprojected=" << (r.projected ? 1 : 0) << "\n";
        } else if (eig->parsed()) {
            Spectrum s;
            if (e_exact) {
                stage = "exact";
                if (e_half > 0.0 && e_lmax > 0.0)
                    s = exact_half_square_below(e_half, e_lmax);
                else if (e_half > 0.0)
                    s = exact_half_square(e_half, e_k);
                else if (e_equi > 0.0)
                    s = exact_equilateral(e_equi, e_k);
                else
                    throw UnsupportedDomain("--exact needs --half-square or --equilateral");
            } else {
                PlanarDomain dom = Triangle::from_sides(1, 1, 1);
                if (!e_sides.empty())
                    dom = parse_sides(e_sides);
                else if (e_half > 0.0)
                    dom = Triangle::from_sides(e_half * std::sqrt(2.0), e_half, e_half);
                else if (e_equi > 0.0)
                    dom = Triangle::from_sides(e_equi, e_equi, e_equi);
                else if (e_gww > 0)
                    dom = e_gww == 1 ? gww_pair().first : gww_pair().second;
                else
                    throw ParseError("line 1, column 1: eigs needs --sides, --half-square, --equilateral or --gww");
                stage = "mesh";
                const Mesh coarse = build_mesh(dom, e_n);
                stage = "solve";
                s = solve_lowest(coarse, e_k);
                s.domain = describe(dom);
                if (e_rich) {
                    stage = "mesh";
                    const Mesh fine = build_mesh(dom, 2 * e_n);
                    stage = "solve";
                    Spectrum f = solve_lowest(fine, e_k);
                    f.domain = s.domain;
                    s = richardson_extrapolate(s, f);
                }
            }
            write_spectrum(out(), s);
        } else if (hr->parsed()) {
            stage = "read";
            const Spectrum s = read_spectrum_file(h_file);
            const auto weyl = s.complete ? std::nullopt : estimate_weyl(s);
            stage = "window";
            const FitWindow w = o_tmin->count() ? FitWindow{h_tmin, h_tmax} : select_window(s, weyl);
            stage = "synthesize";
            const auto ts = log_spaced(w.t_min, w.t_max, h_samples);
            const auto samples = synthesize_grid(s, ts, weyl);
            stage = "fit";
            const HeatFit fit = fit_expansion(samples);
            stage = "invariants";
            const InvariantTriple heard = hear_invariants(fit);
            stage = "reconstruct";
            ReconstructOptions ro;
            ro.feasibility_slack = HearingOptions{}.feasibility_slack;
            const auto r = reconstruct_triangle(heard, ro);
            out() << "t_min=" << num(w.t_min) << "\nt_max=" << num(w.t_max) << "\na0=" << num(fit.coefficients.a0)
                  << "\na_half=" << num(fit.coefficients.a_half) << "\na1=" << num(fit.coefficients.a1)
                  << "\nresidual=" << num(fit.max_residual) << "\ncondition=" << num(fit.condition)
                  << "\nA=" << num(heard.area) << "\nP=" << num(heard.perimeter)
                  << "\nR=" << num(heard.reciprocal_angle_sum) << "\n";
            print_triangle(out(), r.triangle);
            out() << "projected=" << (r.projected ? 1 : 0) << "\n";
        } else if (bil->parsed()) {
            const Triangle t = parse_sides(b_sides);
            stage = "billiard";
            const auto info = shortest_closed_path(t);
            out() << "kind=" << to_string(info.kind) << "\nl0=" << num(info.length) << "\n";
            if (info.kind == PathKind::fagnano) {
                const auto rep = reflection_law_check(info);
                for (int i = 0; i < 3; ++i)
                    out() << "point" << i << "=" << num(info.points[i][0]) << "," << num(info.points[i][1]) << "\n";
                out() << "reflection_residual=" << num(rep.max_residual) << "\n";
            } else {
                out() << "foot=" << num(info.points[0][0]) << "," << num(info.points[0][1]) << "\napex="
                      << num(info.points[1][0]) << "," << num(info.points[1][1])
                      << "\nreflection_residual=" << num(altitude_reflection_residual(info)) << "\n";
            }
        } else if (iso->parsed()) {
            const auto levels = parse_list<int>("--levels", i_levels);
            stage = "isodemo";
            const auto [d1, d2] = gww_pair();
            out() << "area1=" << num(d1.area()) << "\narea2=" << num(d2.area()) << "\nperimeter1="
                  << num(d1.perimeter().value()) << "\nperimeter2=" << num(d2.perimeter().value())
                  << "\ncongruent=" << (lattice_congruent(d1, d2) ? 1 : 0) << "\n";
            const auto rep = compare_spectra(i_k, levels);
            for (const auto& g : rep.levels)
                out() << "n=" << g.n << " max_gap=" << num(g.max_gap) << " lambda1=" << num(g.first.front())
                      << "," << num(g.second.front()) << "\n";
            out() << "shrinking=" << (rep.shrinking() ? 1 : 0) << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: stage=" << stage << " " << e.kind() << ": " << e.what() << "\n";
        return 1;
    }
}
