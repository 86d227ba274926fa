#pragma once

#include <functional>
#include <vector>

#include "lcmq/assembly.hpp"
#include "lcmq/geometry.hpp"
#include "lcmq/kernels.hpp"

namespace lcmq {

// Poisson-type boundary value problem: Laplacian(u) = rhs in the box,
// u = boundary on its faces. The exact solution is optional and used only
// for error reporting.
struct ProblemSpec {
    BoxDomain domain;
    int dimension = 1;
    std::function<double(const Point&)> rhs;
    std::function<double(const Point&)> boundary;
    std::function<double(const Point&)> exact;

    bool has_exact() const { return static_cast<bool>(exact); }
};

// u'' = (105/2) x^2 - 15/2 on [-1, 1] with u(+-1) = 1;
// exact u = (35/8) x^4 - (15/4) x^2 + 3/8.
ProblemSpec example1();

// Laplacian(u) = sin(pi x) sin(pi y) on [0, 1]^2 with u = 0 on the boundary;
// exact u = -sin(pi x) sin(pi y) / (2 pi^2).
ProblemSpec example2();

struct ErrorReport {
    double rmse = 0.0;
    double max_abs = 0.0;
    int probe_count = 0;
};

// Probe-set errors of the collocation solution against the exact solution.
// Throws std::logic_error when the problem has no exact solution.
ErrorReport error_report(const ProblemSpec& problem, const NodeCloud& cloud,
                         const Solution& solution, const KernelSpec& spec,
                         const ProbeSet& probes);

// One leg of a shape-parameter sweep. ok = false marks a leg whose local
// gramians were too ill-conditioned to solve; its errors are NaN.
struct SweepRow {
    Family family = Family::CMQ;
    double c = 0.0;
    double rmse = 0.0;
    double max_abs = 0.0;
    bool ok = true;
};

// Non-adaptive solves of the problem on a fixed cloud for every family/shape
// combination, in the order given.
std::vector<SweepRow> shape_sweep(const ProblemSpec& problem, const NodeCloud& cloud,
                                  const std::vector<Family>& families,
                                  const std::vector<double>& c_values,
                                  const ProbeSet& probes);

}  // namespace lcmq
