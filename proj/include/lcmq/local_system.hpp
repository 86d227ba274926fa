#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "lcmq/geometry.hpp"
#include "lcmq/kernels.hpp"

namespace lcmq {

// Local interpolation stencil: the cover members (nearest neighbors of the
// center, ascending distance), the cover radius, and the factorized kernel
// gramian. The gramian is symmetric but not positive definite because of the
// r^5 term, so it is factorized with pivoted LU rather than Cholesky.
struct Cover {
    int center_index = -1;
    std::vector<int> members;
    double radius = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> gramian_lu;
};

// Kernel gramian of an arbitrary node subset: G(a,b) = phi(|x_a - x_b|).
// Filled symmetrically from the upper triangle so G == G^T holds bitwise.
Eigen::MatrixXd gramian(const NodeCloud& cloud, const KernelSpec& spec,
                        const std::vector<int>& members);

// Builds the cover of cloud.cover_size[center] nearest neighbors around the
// given node and factorizes its gramian. Throws SingularGramianError when the
// reciprocal condition estimate falls below 1e-14.
Cover build_cover(const NodeCloud& cloud, const KernelSpec& spec, int center);

// Same with an explicit cardinality instead of the cloud's stored one.
Cover build_cover(const NodeCloud& cloud, const KernelSpec& spec, int center,
                  int cardinality);

// Cardinal interpolation weights at an evaluation point: W(x) = G^{-1} psi(x)
// with psi_j(x) = phi(|x - x_j|). Reproduces nodal data at the members.
Eigen::VectorXd shape_weights(const Cover& cover, const NodeCloud& cloud,
                              const KernelSpec& spec, const Point& target);

// Weights of the operator applied to the local interpolant, G^{-1} (L psi)(x).
// OperatorTag::Identity reduces to shape_weights.
Eigen::VectorXd operator_weights(const Cover& cover, const NodeCloud& cloud,
                                 const KernelSpec& spec, OperatorTag op,
                                 const Point& target, int d);

// Evaluates the field (or its Laplacian) carried by nodal_values at an
// arbitrary point, using the cover of the node nearest to the target. The
// override replaces that node's stored cover cardinality; values above the
// cloud size are rejected with std::invalid_argument.
double evaluate_field(const NodeCloud& cloud, const Eigen::VectorXd& nodal_values,
                      const KernelSpec& spec, OperatorTag op, const Point& target,
                      std::optional<int> cover_override = std::nullopt);

}  // namespace lcmq
