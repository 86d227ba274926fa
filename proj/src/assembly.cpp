#include "lcmq/assembly.hpp"

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

#include "lcmq/errors.hpp"
#include "lcmq/local_system.hpp"
#include "lcmq/problems.hpp"

namespace lcmq {

SparseSystem assemble(const NodeCloud& cloud, const KernelSpec& spec,
                      const ProblemSpec& problem) {
    const int n = cloud.size();

    SparseSystem system;
    system.rhs.resize(n);
    system.is_boundary = cloud.is_boundary;

    std::vector<Eigen::Triplet<double>> entries;
    for (int i = 0; i < n; ++i) {
        if (cloud.is_boundary[i]) {
            entries.emplace_back(i, i, 1.0);
            system.rhs[i] = problem.boundary(cloud.points[i]);
            continue;
        }
        const Cover cover = build_cover(cloud, spec, i);
        const Eigen::VectorXd w = operator_weights(cover, cloud, spec, OperatorTag::Laplacian,
                                                   cloud.points[i], cloud.dim);
        for (int j = 0; j < static_cast<int>(cover.members.size()); ++j)
            entries.emplace_back(i, cover.members[j], w[j]);
        system.rhs[i] = problem.rhs(cloud.points[i]);
    }

    system.matrix.resize(n, n);
    system.matrix.setFromTriplets(entries.begin(), entries.end());
    return system;
}

Solution solve(const SparseSystem& system) {
    const int n = static_cast<int>(system.rhs.size());

    // Boundary unknowns are fixed verbatim by their unit rows; the interior
    // block is solved after moving the known boundary columns to the rhs.
    std::vector<int> interior;
    std::vector<int> reduced_index(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!system.is_boundary[i]) {
            reduced_index[i] = static_cast<int>(interior.size());
            interior.push_back(i);
        }
    }
    const int ni = static_cast<int>(interior.size());

    Solution solution;
    solution.nodal_values.resize(n);
    for (int i = 0; i < n; ++i)
        if (system.is_boundary[i]) solution.nodal_values[i] = system.rhs[i];

    if (ni > 0) {
        Eigen::VectorXd reduced_rhs(ni);
        std::vector<Eigen::Triplet<double>> entries;
        for (int i = 0; i < n; ++i) {
            if (system.is_boundary[i]) continue;
            const int row = reduced_index[i];
            reduced_rhs[row] = system.rhs[i];
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(system.matrix, i);
                 it; ++it) {
                const int col = static_cast<int>(it.col());
                if (system.is_boundary[col])
                    reduced_rhs[row] -= it.value() * solution.nodal_values[col];
                else
                    entries.emplace_back(row, reduced_index[col], it.value());
            }
        }

        Eigen::SparseMatrix<double> reduced(ni, ni);
        reduced.setFromTriplets(entries.begin(), entries.end());
        reduced.makeCompressed();

        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(reduced);
        if (lu.info() != Eigen::Success)
            throw SolveFailure("interior factorization failed: " + lu.lastErrorMessage());
        const Eigen::VectorXd u_interior = lu.solve(reduced_rhs);
        if (lu.info() != Eigen::Success) throw SolveFailure("interior back substitution failed");

        for (int row = 0; row < ni; ++row) solution.nodal_values[interior[row]] = u_interior[row];
    }

    const double residual =
        (system.matrix * solution.nodal_values - system.rhs).lpNorm<Eigen::Infinity>();
    const double bound = 1e-8 * (1.0 + system.rhs.lpNorm<Eigen::Infinity>());
    if (!(residual <= bound))
        throw SolveFailure("collocation residual " + std::to_string(residual) +
                           " exceeds bound " + std::to_string(bound));
    solution.residual_norm = residual;
    return solution;
}

void dump_matrix(const SparseSystem& system, std::ostream& out) {
    out << std::setprecision(17);
    for (int i = 0; i < system.matrix.outerSize(); ++i)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(system.matrix, i);
             it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace lcmq
