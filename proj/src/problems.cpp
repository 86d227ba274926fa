#include "lcmq/problems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcmq/errors.hpp"
#include "lcmq/local_system.hpp"

namespace lcmq {

ProblemSpec example1() {
    ProblemSpec p;
    p.domain = {{-1.0, 0.0}, {1.0, 0.0}, 1};
    p.dimension = 1;
    p.rhs = [](const Point& x) { return 52.5 * x[0] * x[0] - 7.5; };
    p.boundary = [](const Point&) { return 1.0; };
    p.exact = [](const Point& x) {
        const double x2 = x[0] * x[0];
        return 4.375 * x2 * x2 - 3.75 * x2 + 0.375;
    };
    return p;
}

ProblemSpec example2() {
    ProblemSpec p;
    p.domain = {{0.0, 0.0}, {1.0, 1.0}, 2};
    p.dimension = 2;
    const double pi = std::acos(-1.0);
    p.rhs = [pi](const Point& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
    p.boundary = [](const Point&) { return 0.0; };
    p.exact = [pi](const Point& x) {
        return -std::sin(pi * x[0]) * std::sin(pi * x[1]) / (2.0 * pi * pi);
    };
    return p;
}

ErrorReport error_report(const ProblemSpec& problem, const NodeCloud& cloud,
                         const Solution& solution, const KernelSpec& spec,
                         const ProbeSet& probes) {
    if (!problem.has_exact())
        throw std::logic_error("error_report: problem has no exact solution");
    if (probes.points.empty())
        throw std::invalid_argument("error_report: empty probe set");

    ErrorReport report;
    report.probe_count = static_cast<int>(probes.points.size());
    double sum_sq = 0.0;
    for (const Point& p : probes.points) {
        const double uh =
            evaluate_field(cloud, solution.nodal_values, spec, OperatorTag::Identity, p);
        const double err = std::abs(uh - problem.exact(p));
        sum_sq += err * err;
        report.max_abs = std::max(report.max_abs, err);
    }
    report.rmse = std::sqrt(sum_sq / report.probe_count);
    return report;
}

std::vector<SweepRow> shape_sweep(const ProblemSpec& problem, const NodeCloud& cloud,
                                  const std::vector<Family>& families,
                                  const std::vector<double>& c_values,
                                  const ProbeSet& probes) {
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<SweepRow> rows;
    rows.reserve(families.size() * c_values.size());
    for (Family family : families) {
        for (double c : c_values) {
            SweepRow row;
            row.family = family;
            row.c = c;
            const KernelSpec spec{family, c};
            try {
                const SparseSystem system = assemble(cloud, spec, problem);
                const Solution solution = solve(system);
                const ErrorReport report = error_report(problem, cloud, solution, spec, probes);
                row.rmse = report.rmse;
                row.max_abs = report.max_abs;
            } catch (const SingularGramianError&) {
                row.ok = false;
                row.rmse = nan;
                row.max_abs = nan;
            } catch (const SolveFailure&) {
                row.ok = false;
                row.rmse = nan;
                row.max_abs = nan;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace lcmq
