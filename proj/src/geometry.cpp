#include "lcmq/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lcmq {

std::vector<int> knn(const NodeCloud& cloud, const Point& target, int k) {
    const int n = cloud.size();
    if (k < 1 || k > n) throw std::invalid_argument("knn: k out of range");

    std::vector<std::pair<double, int>> order(n);
    for (int i = 0; i < n; ++i) order[i] = {dist(cloud.points[i], target), i};
    std::partial_sort(order.begin(), order.begin() + k, order.end());

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = order[i].second;
    return idx;
}

std::vector<MarkerCell> build_marker_grid(const BoxDomain& domain,
                                          const std::array<int, 2>& per_axis) {
    const int gx = per_axis[0];
    const int gy = domain.dim == 2 ? per_axis[1] : 1;
    if (gx < 1 || gy < 1) throw std::invalid_argument("marker grid: cell counts must be positive");

    const double wx = (domain.upper[0] - domain.lower[0]) / gx;
    const double wy = domain.dim == 2 ? (domain.upper[1] - domain.lower[1]) / gy : 0.0;
    const double diag = std::sqrt(wx * wx + wy * wy);

    std::vector<MarkerCell> cells;
    cells.reserve(static_cast<std::size_t>(gx) * gy);
    for (int j = 0; j < gy; ++j) {
        for (int i = 0; i < gx; ++i) {
            MarkerCell cell;
            cell.lower = {domain.lower[0] + i * wx, domain.lower[1] + j * wy};
            cell.upper = {i + 1 == gx ? domain.upper[0] : domain.lower[0] + (i + 1) * wx,
                          domain.dim == 2 && j + 1 == gy ? domain.upper[1]
                                                         : domain.lower[1] + (j + 1) * wy};
            cell.center = {0.5 * (cell.lower[0] + cell.upper[0]),
                           0.5 * (cell.lower[1] + cell.upper[1])};
            cell.diameter = diag;
            cells.push_back(cell);
        }
    }
    return cells;
}

ProbeSet uniform_probe_set(const BoxDomain& domain, int per_axis) {
    if (per_axis < 2) throw std::invalid_argument("probe set: need at least 2 points per axis");

    auto coord = [per_axis](double lo, double hi, int i) {
        return i + 1 == per_axis ? hi : lo + (hi - lo) * i / (per_axis - 1);
    };

    ProbeSet probes;
    if (domain.dim == 1) {
        probes.points.reserve(per_axis);
        for (int i = 0; i < per_axis; ++i)
            probes.points.push_back({coord(domain.lower[0], domain.upper[0], i), 0.0});
    } else {
        probes.points.reserve(static_cast<std::size_t>(per_axis) * per_axis);
        for (int j = 0; j < per_axis; ++j)
            for (int i = 0; i < per_axis; ++i)
                probes.points.push_back({coord(domain.lower[0], domain.upper[0], i),
                                         coord(domain.lower[1], domain.upper[1], j)});
    }
    return probes;
}

std::vector<char> boundary_flags(const BoxDomain& domain,
                                 const std::vector<Point>& points, double tol) {
    if (tol < 0.0) tol = 1e-12 * domain.extent();

    std::vector<char> flags(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool on_face = false;
        for (int k = 0; k < domain.dim && !on_face; ++k)
            on_face = std::abs(points[i][k] - domain.lower[k]) <= tol ||
                      std::abs(points[i][k] - domain.upper[k]) <= tol;
        flags[i] = on_face ? 1 : 0;
    }
    return flags;
}

NodeCloud lattice_cloud(const BoxDomain& domain,
                        const std::array<int, 2>& nodes_per_axis, int initial_cover) {
    const int nx = nodes_per_axis[0];
    const int ny = domain.dim == 2 ? nodes_per_axis[1] : 1;
    if (nx < 2 || (domain.dim == 2 && ny < 2))
        throw std::invalid_argument("lattice cloud: need at least 2 nodes per active axis");

    auto coord = [](double lo, double hi, int i, int n) {
        return i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    };

    NodeCloud cloud;
    cloud.dim = domain.dim;
    cloud.points.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            cloud.points.push_back(
                {coord(domain.lower[0], domain.upper[0], i, nx),
                 domain.dim == 2 ? coord(domain.lower[1], domain.upper[1], j, ny) : 0.0});

    cloud.cover_size.assign(cloud.points.size(), initial_cover);
    cloud.is_boundary = boundary_flags(domain, cloud.points);
    return cloud;
}

double fill_distance(const NodeCloud& cloud) {
    const int n = cloud.size();
    if (n < 2) throw std::invalid_argument("fill distance: need at least 2 nodes");

    double fill = 0.0;
    for (int i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (j != i) nearest = std::min(nearest, dist(cloud.points[i], cloud.points[j]));
        fill = std::max(fill, nearest);
    }
    return fill;
}

bool cell_contains(const MarkerCell& cell, const BoxDomain& domain,
                   const Point& p, int dim) {
    for (int k = 0; k < dim; ++k) {
        if (p[k] < cell.lower[k]) return false;
        const bool at_domain_top = cell.upper[k] == domain.upper[k];
        if (at_domain_top ? p[k] > cell.upper[k] : p[k] >= cell.upper[k]) return false;
    }
    return true;
}

}  // namespace lcmq
