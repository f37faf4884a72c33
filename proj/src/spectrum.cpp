#include "hear/spectrum.hpp"

#include "hear/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace hear {

namespace {

std::span<const double> cspan(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> mspan(Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace

Eigenpairs solve_eigenpairs(const Mesh& mesh, int k, const SolverOptions& opt) {
    if (k < 1)
        throw DomainError("eigenvalue count must be positive");
    FemSystem sys = assemble(mesh);
    const Eigen::Index n = sys.stiffness.rows();
    if (n < k) {
        std::ostringstream os;
        os << "mesh has " << n << " interior nodes, fewer than the " << k << " eigenvalues requested";
        throw NotEnoughInteriorNodes(os.str());
    }

    const Eigen::SparseMatrix<double> K = sys.stiffness;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
    if (ldlt.info() != Eigen::Success)
        throw SolverDivergence("stiffness factorization failed");
    const SparseMatrix& M = sys.mass;

    Eigen::Index cap = std::min<Eigen::Index>(n, std::max<Eigen::Index>(3 * k, k + 60));
    Eigen::MatrixXd V(n, cap);
    std::vector<double> alpha, beta;

    Eigen::VectorXd v(n), Mv(n), w(n), Mw(n);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = uni(rng);
    spmv(M, cspan(v), mspan(Mv));
    v /= std::sqrt(v.dot(Mv));
    V.col(0) = v;

    const int stride = std::max(1, std::min(k / 4, 16));
    std::vector<double> prev;
    Eigen::VectorXd theta;
    Eigen::MatrixXd S;
    int outer = 0;
    Eigen::Index m = 0; // current Krylov dimension
    bool converged = false;

    for (Eigen::Index j = 0; j < n; ++j) {
        v = V.col(j);
        spmv(M, cspan(v), mspan(Mv));
        w = ldlt.solve(Mv);
        const double a = Mv.dot(w);
        alpha.push_back(a);
        m = j + 1;
        // Full reorthogonalization in the M inner product, applied twice.
        for (int pass = 0; pass < 2; ++pass) {
            spmv(M, cspan(w), mspan(Mw));
            const Eigen::VectorXd c = V.leftCols(m).transpose() * Mw;
            w.noalias() -= V.leftCols(m) * c;
        }
        spmv(M, cspan(w), mspan(Mw));
        const double b = std::sqrt(std::max(0.0, w.dot(Mw)));
        const bool exhausted = (m == n) || b <= 1e-14 * std::abs(a);

        if (m >= k && ((m - k) % stride == 0 || exhausted)) {
            ++outer;
            Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                      : Eigen::VectorXd();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
            theta = es.eigenvalues();
            S = es.eigenvectors();
            std::vector<double> lam(k);
            bool ok = !prev.empty();
            for (int i = 0; i < k; ++i) {
                const Eigen::Index c = m - 1 - i;
                lam[i] = 1.0 / theta[c];
                const double resid = std::abs(b * S(m - 1, c)) / std::abs(theta[c]);
                if (!prev.empty() && std::abs(lam[i] - prev[i]) > opt.relative_change_tol * std::abs(lam[i]))
                    ok = false;
                if (resid > 1e-8)
                    ok = false;
            }
            prev = lam;
            if (ok || exhausted) {
                converged = true;
                break;
            }
            if (outer >= opt.max_outer_iterations)
                break;
        }
        if (exhausted)
            break;
        beta.push_back(b);
        if (m == cap) {
            cap = std::min<Eigen::Index>(n, 2 * cap);
            V.conservativeResize(Eigen::NoChange, cap);
        }
        V.col(m) = w / b;
    }
    if (!converged) {
        std::ostringstream os;
        os << "Lanczos did not converge after " << outer << " outer iterations";
        throw SolverDivergence(os.str());
    }
    if (m < k)
        throw SolverDivergence("Krylov space exhausted before k eigenvalues were found");

    Eigenpairs out;
    out.outer_iterations = outer;
    out.spectrum.method = "fem-h";
    out.spectrum.h = mesh.h;
    out.vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        const Eigen::Index c = m - 1 - i;
        out.spectrum.values.push_back(1.0 / theta[c]);
        out.vectors.col(i) = V.leftCols(m) * S.col(c);
    }
    out.system = std::move(sys);
    return out;
}

Spectrum solve_lowest(const Mesh& mesh, int k, const SolverOptions& opt) {
    return solve_eigenpairs(mesh, k, opt).spectrum;
}

namespace {

// Smallest k values of q(m, n) over the index set, q nondecreasing in both indices.
template <class Q, class Admit>
std::vector<long long> smallest_lattice_values(int k, Q q, Admit admit) {
    for (int L = 8;; L *= 2) {
        std::vector<long long> vals;
        for (int m = 1; m <= L; ++m)
            for (int n = 1; n <= L; ++n)
                if (admit(m, n))
                    vals.push_back(q(m, n));
        std::sort(vals.begin(), vals.end());
        // Every pair with an index above L has q >= q(L + 1, 1).
        if (static_cast<int>(vals.size()) >= k && vals[k - 1] < q(L + 1, 1)) {
            vals.resize(k);
            return vals;
        }
    }
}

} // namespace

Spectrum exact_half_square(double leg, int k) {
    if (k < 1)
        throw DomainError("eigenvalue count must be positive");
    const auto q = smallest_lattice_values(
        k, [](long long m, long long n) { return m * m + n * n; }, [](int m, int n) { return m > n; });
    Spectrum s;
    const double scale = (pi / leg) * (pi / leg);
    for (auto v : q)
        s.values.push_back(scale * static_cast<double>(v));
    std::ostringstream os;
    os.precision(17);
    os << "half-square " << leg;
    s.domain = os.str();
    s.method = "exact";
    return s;
}

Spectrum exact_half_square_below(double leg, double lambda_max) {
    const double scale = (pi / leg) * (pi / leg);
    const long long bound = static_cast<long long>(std::floor(lambda_max / scale));
    std::vector<long long> q;
    for (long long m = 2; m * m + 1 <= bound; ++m)
        for (long long n = 1; n < m && m * m + n * n <= bound; ++n)
            q.push_back(m * m + n * n);
    std::sort(q.begin(), q.end());
    Spectrum s;
    for (auto v : q)
        if (scale * static_cast<double>(v) <= lambda_max)
            s.values.push_back(scale * static_cast<double>(v));
    std::ostringstream os;
    os.precision(17);
    os << "half-square " << leg;
    s.domain = os.str();
    s.method = "exact";
    return s;
}

Spectrum exact_equilateral(double side, int k) {
    if (k < 1)
        throw DomainError("eigenvalue count must be positive");
    const auto q = smallest_lattice_values(
        k, [](long long m, long long n) { return m * m + m * n + n * n; }, [](int, int) { return true; });
    Spectrum s;
    const double scale = 16.0 * pi * pi / (9.0 * side * side);
    for (auto v : q)
        s.values.push_back(scale * static_cast<double>(v));
    std::ostringstream os;
    os.precision(17);
    os << "equilateral " << side;
    s.domain = os.str();
    s.method = "exact";
    return s;
}

double exact_rectangle_first(double width, double height) {
    return pi * pi * (1.0 / (width * width) + 1.0 / (height * height));
}

double weyl_count(double area, double perimeter, double lam) {
    return (area * lam - perimeter * std::sqrt(lam)) / (4.0 * pi);
}

Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine) {
    if (coarse.size() != fine.size() || coarse.size() == 0)
        throw MismatchedInputs("spectra must have the same, nonzero length");
    if (coarse.domain != fine.domain)
        throw MismatchedInputs("spectra come from different domains");
    if (coarse.method != "fem-h" || fine.method != "fem-h")
        throw MismatchedInputs("extrapolation needs two finite-element spectra");
    if (!(std::abs(coarse.h - 2.0 * fine.h) <= 1e-12 * coarse.h))
        throw MismatchedInputs("fine mesh size must be half the coarse mesh size");
    Spectrum out = fine;
    for (std::size_t i = 0; i < fine.size(); ++i)
        out.values[i] = (4.0 * fine.values[i] - coarse.values[i]) / 3.0;
    std::sort(out.values.begin(), out.values.end());
    out.extrapolated = true;
    return out;
}

void write_spectrum(std::ostream& os, const Spectrum& s) {
    os << "# domain=" << s.domain << "\n";
    os << "# method=" << s.method << "\n";
    {
        std::ostringstream h;
        h.precision(17);
        h << s.h;
        os << "# h=" << h.str() << "\n";
    }
    os << "# k=" << s.size() << "\n";
    if (s.complete)
        os << "# complete=1\n";
    if (s.extrapolated)
        os << "# extrapolated=richardson\n";
    char buf[64];
    for (double v : s.values) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        os.write(buf, end - buf);
        os << "\n";
    }
}

Spectrum read_spectrum(std::istream& is) {
    Spectrum s;
    std::string line;
    int lineno = 0;
    auto fail = [&](std::size_t col, const std::string& what) {
        std::ostringstream os;
        os << "line " << lineno << ", column " << col + 1 << ": " << what;
        throw ParseError(os.str());
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            const auto body = line.substr(first + 1);
            const auto b = body.find_first_not_of(" \t");
            const auto eq = body.find('=');
            if (b == std::string::npos || eq == std::string::npos)
                continue;
            const std::string key = body.substr(b, eq - b);
            const std::string val = body.substr(eq + 1);
            if (key == "domain")
                s.domain = val;
            else if (key == "method")
                s.method = val;
            else if (key == "h") {
                const char* p = val.data();
                auto [end, ec] = std::from_chars(p, p + val.size(), s.h);
                if (ec != std::errc())
                    fail(first + 1 + eq + 1, "metadata h is not a number");
            } else if (key == "complete")
                s.complete = val == "1" || val == "true";
            else if (key == "extrapolated")
                s.extrapolated = !val.empty();
            continue;
        }
        const auto last = line.find_last_not_of(" \t");
        double v = 0.0;
        const char* p = line.data() + first;
        const char* e = line.data() + last + 1;
        auto [end, ec] = std::from_chars(p, e, v);
        if (ec != std::errc())
            fail(first, "expected a decimal eigenvalue");
        if (end != e)
            fail(static_cast<std::size_t>(end - line.data()), "unexpected trailing characters");
        if (!(v > 0.0) || !std::isfinite(v))
            fail(first, "eigenvalues must be positive and finite");
        if (!s.values.empty() && v < s.values.back())
            fail(first, "eigenvalues must be listed in ascending order");
        s.values.push_back(v);
    }
    return s;
}

Spectrum read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open spectrum file '" + path + "'");
    try {
        return read_spectrum(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace hear
