#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin with the same
// contract; the serial one is the reference used by tests and benchmarks.

#include "hear/mesh.hpp"

#include <Eigen/Sparse>

#include <span>
#include <vector>

namespace hear {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// P1 stiffness and consistent mass restricted to interior nodes.
struct FemSystem {
    SparseMatrix stiffness;
    SparseMatrix mass;
    std::vector<int> interior_nodes; // row/column index -> mesh node
};

FemSystem assemble(const Mesh& mesh);
FemSystem assemble_serial(const Mesh& mesh);

// y = A x for a row-major sparse matrix.
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);
void spmv_serial(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

// out[i] = sum_k exp(-lambda_k t_i), summed from the largest eigenvalue down.
std::vector<double> heat_sums(std::span<const double> eigenvalues, std::span<const double> times);
std::vector<double> heat_sums_serial(std::span<const double> eigenvalues, std::span<const double> times);

} // namespace hear
