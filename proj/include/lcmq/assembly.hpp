#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lcmq/geometry.hpp"
#include "lcmq/kernels.hpp"

namespace lcmq {

struct ProblemSpec;

// Global collocation system. Interior rows carry the Laplacian operator
// weights of the local cover scattered into the cover's columns; boundary
// rows are unit rows pinning the Dirichlet data.
struct SparseSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;
    std::vector<char> is_boundary;
};

struct Solution {
    Eigen::VectorXd nodal_values;
    double residual_norm = 0.0;
};

SparseSystem assemble(const NodeCloud& cloud, const KernelSpec& spec,
                      const ProblemSpec& problem);

// Eliminates the boundary unknowns (their values are the boundary rhs
// entries, taken verbatim), solves the interior block with sparse LU, and
// verifies the full-system residual. Throws SolveFailure when factorization
// fails or the residual exceeds 1e-8 * (1 + max |rhs|).
Solution solve(const SparseSystem& system);

// Coordinate-format text dump: one "row col value" line per stored entry.
void dump_matrix(const SparseSystem& system, std::ostream& out);

}  // namespace lcmq
