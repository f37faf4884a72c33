#include "hear/errors.hpp"
#include "hear/isospectral.hpp"
#include "hear/kernels.hpp"
#include "hear/mesh.hpp"
#include "hear/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace hear;

namespace {

const Triangle half_square = Triangle::from_sides(std::sqrt(2.0), 1, 1);

// Brute-force enumeration oracle, independent of the library's lattice search.
std::vector<double> brute_half_square(int k) {
    std::vector<double> v;
    for (int m = 1; m < 60; ++m)
        for (int n = 1; n < m; ++n)
            v.push_back(pi * pi * (m * m + n * n));
    std::sort(v.begin(), v.end());
    v.resize(k);
    return v;
}

} // namespace

TEST(Mesh, SmallCounts) {
    const Mesh e2 = build_mesh(Triangle::from_sides(1, 1, 1), 2);
    EXPECT_EQ(e2.elements.size(), 4u);
    EXPECT_EQ(e2.nodes.size(), 6u);
    EXPECT_EQ(e2.interior_count(), 0u);
    EXPECT_EQ(build_mesh(Triangle::from_sides(1, 1, 1), 3).interior_count(), 1u);

    const Mesh h4 = build_mesh(half_square, 4);
    EXPECT_EQ(h4.elements.size(), 16u);
    EXPECT_EQ(h4.nodes.size(), 15u);
    EXPECT_EQ(h4.interior_count(), 3u);

    const Mesh g1 = build_mesh(gww_pair().first, 1);
    EXPECT_EQ(g1.elements.size(), 7u);
    EXPECT_THROW(build_mesh(half_square, 0), DomainError);
}

TEST(Mesh, PositiveElementsAndExactArea) {
    const auto [d1, d2] = gww_pair();
    for (const PlanarDomain& dom : {PlanarDomain{half_square}, PlanarDomain{Triangle::from_sides(5, 4, 3)},
                                    PlanarDomain{d1}, PlanarDomain{d2}}) {
        for (int n : {1, 4, 7}) {
            const Mesh m = build_mesh(dom, n);
            for (std::size_t e = 0; e < m.elements.size(); ++e)
                EXPECT_GT(m.signed_area(e), 0.0);
            const double area = std::holds_alternative<Triangle>(dom) ? area_of(std::get<Triangle>(dom))
                                                                      : std::get<GridPolygon>(dom).area();
            EXPECT_NEAR(m.total_area() / area, 1.0, 1e-13);
        }
    }
}

TEST(Mesh, BoundaryNodesLieOnBoundary) {
    const auto d = gww_pair().first;
    const Mesh m = build_mesh(d, 4);
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        const double x = m.nodes[i][0], y = m.nodes[i][1];
        // Interior nodes are inside; boundary nodes have points outside within a tiny radius.
        bool near_outside = false;
        for (int a = 0; a < 16; ++a) {
            const double th = 2 * pi * (a + 0.5) / 16;
            if (!d.contains(x + 1e-6 * std::cos(th), y + 1e-6 * std::sin(th)))
                near_outside = true;
        }
        EXPECT_EQ(static_cast<bool>(m.boundary[i]), near_outside) << x << "," << y;
    }
}

TEST(Mesh, RejectsUnsupportedEdges) {
    EXPECT_THROW(GridPolygon::from_vertices({{0, 0}, {2, 1}, {0, 1}}), UnsupportedDomain);
    EXPECT_THROW(GridPolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}}), DomainError);
}

TEST(Kernels, ParallelMatchesSerial) {
    const Mesh m = build_mesh(Triangle::from_sides(5, 4, 3), 40);
    const FemSystem a = assemble(m), b = assemble_serial(m);
    ASSERT_EQ(a.stiffness.nonZeros(), b.stiffness.nonZeros());
    for (Eigen::Index i = 0; i < a.stiffness.nonZeros(); ++i) {
        EXPECT_EQ(a.stiffness.valuePtr()[i], b.stiffness.valuePtr()[i]);
        EXPECT_EQ(a.mass.valuePtr()[i], b.mass.valuePtr()[i]);
    }
    std::mt19937_64 rng(1);
    std::vector<double> x(a.stiffness.rows()), y1(x.size()), y2(x.size());
    for (auto& v : x)
        v = std::uniform_real_distribution<double>(-1, 1)(rng);
    spmv(a.stiffness, x, y1);
    spmv_serial(a.stiffness, x, y2);
    EXPECT_EQ(y1, y2);
    const std::vector<double> lam{1, 2, 3, 50, 400}, ts{1e-3, 1e-2, 0.1, 1};
    EXPECT_EQ(heat_sums(lam, ts), heat_sums_serial(lam, ts));
}

TEST(Kernels, MassAndStiffnessSymmetricPositive) {
    const FemSystem s = assemble(build_mesh(half_square, 8));
    const Eigen::MatrixXd K = Eigen::MatrixXd(s.stiffness), M = Eigen::MatrixXd(s.mass);
    EXPECT_LT((K - K.transpose()).norm(), 1e-14);
    EXPECT_LT((M - M.transpose()).norm(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ek(K), em(M);
    EXPECT_GT(ek.eigenvalues().minCoeff(), 0.0);
    EXPECT_GT(em.eigenvalues().minCoeff(), 0.0);
}

TEST(Solver, HalfSquareLowModes) {
    const auto s = solve_lowest(build_mesh(half_square, 64), 5);
    const auto ref = brute_half_square(5);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(s.values[i] / ref[i], 1.0, 0.01);
        EXPECT_GT(s.values[i], ref[i]); // conforming elements bound from above
    }
}

TEST(Solver, RayleighQuotientAndDeterminism) {
    const Mesh m = build_mesh(Triangle::from_sides(5, 4, 3), 24);
    const auto ep = solve_eigenpairs(m, 3);
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXd v = ep.vectors.col(i);
        const double rq = v.dot(ep.system.stiffness * v) / v.dot(ep.system.mass * v);
        EXPECT_NEAR(rq / ep.spectrum.values[i], 1.0, 1e-10);
    }
    EXPECT_EQ(solve_lowest(m, 3).values, ep.spectrum.values);
}

TEST(Solver, Errors) {
    EXPECT_THROW(solve_lowest(build_mesh(Triangle::from_sides(1, 1, 1), 2), 1), NotEnoughInteriorNodes);
    EXPECT_THROW(solve_lowest(build_mesh(half_square, 8), 0), DomainError);
}

TEST(Solver, ScalingLaw) {
    const Mesh m = build_mesh(Triangle::from_sides(5, 4, 3), 16);
    const auto a = solve_lowest(m, 6), b = solve_lowest(scaled(m, 2.0), 6);
    for (int i = 0; i < 6; ++i)
        EXPECT_NEAR(b.values[i] * 4 / a.values[i], 1.0, 1e-9);
}

TEST(Solver, DomainMonotonicity) {
    // The half-square sits inside the unit square.
    const double lam = solve_lowest(build_mesh(half_square, 16), 1).values[0];
    EXPECT_GT(lam, exact_rectangle_first(1.0, 1.0));
}

TEST(Solver, ConvergenceOrder) {
    const double ref = 5 * pi * pi;
    double err[3];
    int i = 0;
    for (int n : {16, 32, 64})
        err[i++] = solve_lowest(build_mesh(half_square, n), 1).values[0] - ref;
    for (int j = 0; j < 2; ++j) {
        const double order = std::log2(err[j] / err[j + 1]);
        EXPECT_GE(order, 1.7);
        EXPECT_LE(order, 2.3);
    }
}

TEST(Exact, HalfSquare) {
    const auto s = exact_half_square(1.0, 40);
    const auto ref = brute_half_square(40);
    for (int i = 0; i < 40; ++i)
        EXPECT_NEAR(s.values[i], ref[i], 1e-12 * ref[i]);
    EXPECT_NEAR(exact_half_square(1.0, 1).values[0], 49.3480, 1e-4);
    const auto t = exact_half_square(2.0, 3);
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(t.values[i], s.values[i] / 4, 1e-12);
    const auto below = exact_half_square_below(1.0, 200.0);
    EXPECT_EQ(below.size(), 5u);
    const auto big = exact_half_square_below(1.0, 1e4);
    EXPECT_EQ(big.values, exact_half_square(1.0, static_cast<int>(big.size())).values);
    EXPECT_GT(exact_half_square(1.0, static_cast<int>(big.size()) + 1).values.back(), 1e4);
}

TEST(Exact, EquilateralValuesAndMultiplicity) {
    const auto s = exact_equilateral(1.0, 3);
    EXPECT_NEAR(s.values[0], 16 * pi * pi / 3, 1e-12);
    EXPECT_NEAR(s.values[1], 16 * pi * pi * 7 / 9, 1e-12);
    EXPECT_EQ(s.values[1], s.values[2]);
    EXPECT_NEAR(exact_equilateral(2.0, 1).values[0], s.values[0] / 4, 1e-12);
}

TEST(Exact, EquilateralFormulaAgreesWithRefinedFem) {
    const Triangle eq = Triangle::from_sides(1, 1, 1);
    Spectrum c = solve_lowest(build_mesh(eq, 32), 10), f = solve_lowest(build_mesh(eq, 64), 10);
    c.domain = f.domain = "equilateral";
    const auto x = richardson_extrapolate(c, f);
    const auto ref = exact_equilateral(1.0, 10);
    for (int i = 0; i < 10; ++i)
        EXPECT_NEAR(x.values[i] / ref.values[i], 1.0, 1e-3) << i;
}

TEST(Weyl, CountExample) {
    const double a = 0.5, p = 2 + std::sqrt(2.0);
    EXPECT_NEAR(weyl_count(a, p, 200.0), (0.5 * 200 - p * std::sqrt(200.0)) / (4 * pi), 1e-12);
    EXPECT_NEAR(weyl_count(a, p, 200.0), 4.12, 0.01);
    EXPECT_NEAR(weyl_count(a, p, 1e-12), 0.0, 1e-6);
    const double lead1 = weyl_count(a, 0.0, 50.0), lead2 = weyl_count(2 * a, 0.0, 50.0);
    EXPECT_EQ(lead2, 2 * lead1);
}

TEST(Richardson, HalfSquareAndOrdering) {
    const auto c = solve_lowest(build_mesh(half_square, 32), 3);
    const auto f = solve_lowest(build_mesh(half_square, 64), 3);
    const auto x = richardson_extrapolate(c, f);
    EXPECT_NEAR(x.values[0] / (5 * pi * pi), 1.0, 5e-4);
    EXPECT_TRUE(x.extrapolated);
    for (int i = 0; i < 3; ++i) {
        EXPECT_GE(c.values[i], f.values[i]);
        EXPECT_GE(f.values[i], x.values[i]);
    }
}

TEST(Richardson, FixedPointAndMismatch) {
    Spectrum c{{1.0, 2.0, 3.0}, "d", "fem-h", 0.2}, f{{1.0, 2.0, 3.0}, "d", "fem-h", 0.1};
    EXPECT_EQ(richardson_extrapolate(c, f).values, c.values);
    Spectrum g = f;
    g.domain = "other";
    EXPECT_THROW(richardson_extrapolate(c, g), MismatchedInputs);
    g = f;
    g.h = 0.15;
    EXPECT_THROW(richardson_extrapolate(c, g), MismatchedInputs);
    g = f;
    g.values.pop_back();
    EXPECT_THROW(richardson_extrapolate(c, g), MismatchedInputs);
    g = f;
    g.method = "exact";
    EXPECT_THROW(richardson_extrapolate(c, g), MismatchedInputs);
}

TEST(Serialization, RoundTrip) {
    Spectrum s = exact_half_square(1.0, 7);
    s.complete = false;
    std::stringstream io;
    write_spectrum(io, s);
    const Spectrum r = read_spectrum(io);
    EXPECT_EQ(r.values, s.values);
    EXPECT_EQ(r.domain, s.domain);
    EXPECT_EQ(r.method, "exact");
}

TEST(Serialization, DiagnosticsCarryLineAndColumn) {
    auto msg = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_spectrum(in);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(msg("# k=2\n1.5\n  abc\n").substr(0, 18), "line 3, column 3: ");
    EXPECT_EQ(msg("1.5\n2.5x\n").substr(0, 18), "line 2, column 4: ");
    EXPECT_NE(msg("2\n1\n").find("ascending"), std::string::npos);
    EXPECT_NE(msg("-1\n").find("positive"), std::string::npos);
    EXPECT_THROW(read_spectrum_file("/nonexistent/spectrum.txt"), ParseError);
}
