#include "hear/kernels.hpp"

#include <omp.h>

#include <cmath>

namespace hear {

namespace {

using Triplet = Eigen::Triplet<double>;

std::vector<int> interior_index(const Mesh& mesh, std::vector<int>& interior_nodes) {
    std::vector<int> idx(mesh.nodes.size(), -1);
    interior_nodes.clear();
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
        if (!mesh.boundary[i]) {
            idx[i] = static_cast<int>(interior_nodes.size());
            interior_nodes.push_back(static_cast<int>(i));
        }
    return idx;
}

// Local P1 stiffness and mass of element e, scattered to interior dofs.
void element_triplets(const Mesh& mesh, const std::vector<int>& idx, std::size_t e, std::vector<Triplet>& k,
                      std::vector<Triplet>& m) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.nodes[el[0]];
    const auto& p1 = mesh.nodes[el[1]];
    const auto& p2 = mesh.nodes[el[2]];
    const double bx[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double cy[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
    const double area = 0.5 * (bx[0] * cy[1] - bx[1] * cy[0]);
    for (int a = 0; a < 3; ++a) {
        const int ia = idx[el[a]];
        if (ia < 0)
            continue;
        for (int b = 0; b < 3; ++b) {
            const int ib = idx[el[b]];
            if (ib < 0)
                continue;
            k.emplace_back(ia, ib, (bx[a] * bx[b] + cy[a] * cy[b]) / (4.0 * area));
            m.emplace_back(ia, ib, area / 12.0 * (a == b ? 2.0 : 1.0));
        }
    }
}

FemSystem from_triplets(std::size_t n, std::vector<int> interior, const std::vector<Triplet>& k,
                        const std::vector<Triplet>& m) {
    FemSystem s;
    s.stiffness.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    s.mass.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    s.stiffness.setFromTriplets(k.begin(), k.end());
    s.mass.setFromTriplets(m.begin(), m.end());
    s.interior_nodes = std::move(interior);
    return s;
}

} // namespace

FemSystem assemble_serial(const Mesh& mesh) {
    std::vector<int> interior;
    const auto idx = interior_index(mesh, interior);
    std::vector<Triplet> k, m;
    k.reserve(mesh.elements.size() * 9);
    m.reserve(mesh.elements.size() * 9);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e)
        element_triplets(mesh, idx, e, k, m);
    const std::size_t n = interior.size();
    return from_triplets(n, std::move(interior), k, m);
}

FemSystem assemble(const Mesh& mesh) {
    std::vector<int> interior;
    const auto idx = interior_index(mesh, interior);
    const long ne = static_cast<long>(mesh.elements.size());
    const int nt = omp_get_max_threads();
    std::vector<std::vector<Triplet>> kt(nt), mt(nt);
    // Contiguous static chunks, concatenated in thread order, reproduce the
    // serial triplet order exactly.
#pragma omp parallel num_threads(nt)
    {
        const int tid = omp_get_thread_num();
        const int nth = omp_get_num_threads();
        const long lo = ne * tid / nth, hi = ne * (tid + 1) / nth;
        kt[tid].reserve(static_cast<std::size_t>(hi - lo) * 9);
        mt[tid].reserve(static_cast<std::size_t>(hi - lo) * 9);
        for (long e = lo; e < hi; ++e)
            element_triplets(mesh, idx, static_cast<std::size_t>(e), kt[tid], mt[tid]);
    }
    std::vector<Triplet> k, m;
    for (int t = 0; t < nt; ++t) {
        k.insert(k.end(), kt[t].begin(), kt[t].end());
        m.insert(m.end(), mt[t].begin(), mt[t].end());
    }
    const std::size_t n = interior.size();
    return from_triplets(n, std::move(interior), k, m);
}

void spmv_serial(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
    const auto* outer = A.outerIndexPtr();
    const auto* inner = A.innerIndexPtr();
    const auto* val = A.valuePtr();
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        double s = 0.0;
        for (auto p = outer[r]; p < outer[r + 1]; ++p)
            s += val[p] * x[inner[p]];
        y[r] = s;
    }
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
    const auto* outer = A.outerIndexPtr();
    const auto* inner = A.innerIndexPtr();
    const auto* val = A.valuePtr();
    const long rows = static_cast<long>(A.rows());
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        double s = 0.0;
        for (auto p = outer[r]; p < outer[r + 1]; ++p)
            s += val[p] * x[inner[p]];
        y[r] = s;
    }
}

std::vector<double> heat_sums_serial(std::span<const double> eigenvalues, std::span<const double> times) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = eigenvalues.size(); k-- > 0;)
            s += std::exp(-eigenvalues[k] * times[i]);
        out[i] = s;
    }
    return out;
}

std::vector<double> heat_sums(std::span<const double> eigenvalues, std::span<const double> times) {
    std::vector<double> out(times.size());
    const long nt = static_cast<long>(times.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < nt; ++i) {
        double s = 0.0;
        for (std::size_t k = eigenvalues.size(); k-- > 0;)
            s += std::exp(-eigenvalues[k] * times[i]);
        out[i] = s;
    }
    return out;
}

} // namespace hear
