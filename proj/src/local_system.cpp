#include "lcmq/local_system.hpp"

#include <stdexcept>
#include <string>

#include "lcmq/errors.hpp"

namespace lcmq {

Eigen::MatrixXd gramian(const NodeCloud& cloud, const KernelSpec& spec,
                        const std::vector<int>& members) {
    const int m = static_cast<int>(members.size());
    Eigen::MatrixXd g(m, m);
    for (int a = 0; a < m; ++a) {
        g(a, a) = kernel_value(spec, 0.0);
        for (int b = a + 1; b < m; ++b) {
            const double v =
                kernel_value(spec, dist(cloud.points[members[a]], cloud.points[members[b]]));
            g(a, b) = v;
            g(b, a) = v;
        }
    }
    return g;
}

Cover build_cover(const NodeCloud& cloud, const KernelSpec& spec, int center,
                  int cardinality) {
    if (center < 0 || center >= cloud.size())
        throw std::invalid_argument("build_cover: center index out of range");
    if (cardinality < 1 || cardinality > cloud.size())
        throw std::invalid_argument("build_cover: cardinality out of range");

    Cover cover;
    cover.center_index = center;
    cover.members = knn(cloud, cloud.points[center], cardinality);
    cover.radius = dist(cloud.points[center], cloud.points[cover.members.back()]);
    cover.gramian_lu.compute(gramian(cloud, spec, cover.members));

    const double rc = cover.gramian_lu.rcond();
    if (!(rc > 1e-14)) throw SingularGramianError(center, rc);
    return cover;
}

Cover build_cover(const NodeCloud& cloud, const KernelSpec& spec, int center) {
    if (center < 0 || center >= cloud.size())
        throw std::invalid_argument("build_cover: center index out of range");
    return build_cover(cloud, spec, center, cloud.cover_size[center]);
}

namespace {

Eigen::VectorXd operator_image(const Cover& cover, const NodeCloud& cloud,
                               const KernelSpec& spec, OperatorTag op,
                               const Point& target, int d) {
    const int m = static_cast<int>(cover.members.size());
    Eigen::VectorXd psi(m);
    for (int j = 0; j < m; ++j)
        psi[j] = apply_operator(spec, op, dist(target, cloud.points[cover.members[j]]), d);
    return psi;
}

}  // namespace

Eigen::VectorXd shape_weights(const Cover& cover, const NodeCloud& cloud,
                              const KernelSpec& spec, const Point& target) {
    return cover.gramian_lu.solve(
        operator_image(cover, cloud, spec, OperatorTag::Identity, target, cloud.dim));
}

Eigen::VectorXd operator_weights(const Cover& cover, const NodeCloud& cloud,
                                 const KernelSpec& spec, OperatorTag op,
                                 const Point& target, int d) {
    return cover.gramian_lu.solve(operator_image(cover, cloud, spec, op, target, d));
}

double evaluate_field(const NodeCloud& cloud, const Eigen::VectorXd& nodal_values,
                      const KernelSpec& spec, OperatorTag op, const Point& target,
                      std::optional<int> cover_override) {
    if (nodal_values.size() != cloud.size())
        throw std::invalid_argument("evaluate_field: nodal value count does not match cloud");
    if (cover_override && (*cover_override < 1 || *cover_override > cloud.size()))
        throw std::invalid_argument("evaluate_field: cover override out of range (cloud has " +
                                    std::to_string(cloud.size()) + " nodes)");

    const int nearest = knn(cloud, target, 1)[0];
    const int card = cover_override ? *cover_override : cloud.cover_size[nearest];
    const Cover cover = build_cover(cloud, spec, nearest, card);
    const Eigen::VectorXd w = operator_weights(cover, cloud, spec, op, target, cloud.dim);

    double value = 0.0;
    for (int j = 0; j < static_cast<int>(cover.members.size()); ++j)
        value += w[j] * nodal_values[cover.members[j]];
    return value;
}

}  // namespace lcmq
