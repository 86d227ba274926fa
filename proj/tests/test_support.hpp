#pragma once

#include <random>
#include <vector>

#include "lcmq/geometry.hpp"

namespace testsup {

// Unit-spacing 1D cloud with jittered node positions. Unit spacing keeps the
// local gramians far enough from singular that weight identities can be
// checked at tight tolerances.
inline lcmq::NodeCloud jittered_cloud_1d(int n, double jitter, int cover,
                                         std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> wiggle(-jitter, jitter);
    lcmq::NodeCloud cloud;
    cloud.dim = 1;
    for (int i = 0; i < n; ++i)
        cloud.points.push_back({scale * (i + wiggle(rng)), 0.0});
    cloud.cover_size.assign(n, cover);
    cloud.is_boundary.assign(n, 0);
    return cloud;
}

inline lcmq::NodeCloud jittered_cloud_2d(int nx, int ny, double jitter, int cover,
                                         std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> wiggle(-jitter, jitter);
    lcmq::NodeCloud cloud;
    cloud.dim = 2;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            cloud.points.push_back({scale * (i + wiggle(rng)), scale * (j + wiggle(rng))});
    cloud.cover_size.assign(static_cast<std::size_t>(nx) * ny, cover);
    cloud.is_boundary.assign(static_cast<std::size_t>(nx) * ny, 0);
    return cloud;
}

// Plain 1D cloud at given coordinates, all interior, shared cover size.
inline lcmq::NodeCloud cloud_1d(const std::vector<double>& xs, int cover) {
    lcmq::NodeCloud cloud;
    cloud.dim = 1;
    for (double x : xs) cloud.points.push_back({x, 0.0});
    cloud.cover_size.assign(xs.size(), cover);
    cloud.is_boundary.assign(xs.size(), 0);
    return cloud;
}

}  // namespace testsup
