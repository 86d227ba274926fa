#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace lcmq {

// Points are stored as (x, y); the y component is 0 for one-dimensional runs.
using Point = std::array<double, 2>;

inline double dist(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

struct BoxDomain {
    Point lower{0.0, 0.0};
    Point upper{1.0, 0.0};
    int dim = 1;

    double extent() const {
        double e = upper[0] - lower[0];
        if (dim == 2) e = std::max(e, upper[1] - lower[1]);
        return e;
    }

    bool contains(const Point& p, double tol = 0.0) const {
        for (int k = 0; k < dim; ++k)
            if (p[k] < lower[k] - tol || p[k] > upper[k] + tol) return false;
        return true;
    }
};

// Scattered collocation nodes together with their per-node cover cardinality
// and boundary classification.
struct NodeCloud {
    std::vector<Point> points;
    std::vector<int> cover_size;
    std::vector<char> is_boundary;
    int dim = 1;

    int size() const { return static_cast<int>(points.size()); }
};

// Axis-aligned cell of the error-indicator grid. The diameter is the box
// diagonal restricted to the active dimensions.
struct MarkerCell {
    Point lower{0.0, 0.0};
    Point upper{0.0, 0.0};
    Point center{0.0, 0.0};
    double diameter = 0.0;
};

struct ProbeSet {
    std::vector<Point> points;
};

// Indices of the k nodes nearest to target, ordered by ascending distance.
// Distance ties break toward the smaller node index so the result is a pure
// function of the cloud contents.
std::vector<int> knn(const NodeCloud& cloud, const Point& target, int k);

// Tensor-product partition of the domain into per_axis[0] x per_axis[1]
// cells (the second count is ignored in 1D). Cells are listed x-fastest.
std::vector<MarkerCell> build_marker_grid(const BoxDomain& domain,
                                          const std::array<int, 2>& per_axis);

// Uniform evaluation lattice with per_axis points along each active axis,
// endpoints included.
ProbeSet uniform_probe_set(const BoxDomain& domain, int per_axis);

// Classifies each point as boundary iff it lies within tol of some face of
// the box. Pass tol < 0 to use the default of 1e-12 times the domain extent.
std::vector<char> boundary_flags(const BoxDomain& domain,
                                 const std::vector<Point>& points,
                                 double tol = -1.0);

// Regular lattice of nodes_per_axis[0] x nodes_per_axis[1] nodes spanning the
// domain, every node starting with the same cover cardinality.
NodeCloud lattice_cloud(const BoxDomain& domain,
                        const std::array<int, 2>& nodes_per_axis,
                        int initial_cover);

// Largest nearest-neighbor distance over the cloud; the characteristic
// spacing used to scale insertion-separation thresholds.
double fill_distance(const NodeCloud& cloud);

// Membership in a marker cell. Cells are half-open (closed below, open
// above) except along domain top faces, where they close so that every
// domain point belongs to exactly one cell.
bool cell_contains(const MarkerCell& cell, const BoxDomain& domain,
                   const Point& p, int dim);

}  // namespace lcmq
