#include "lcmq/adaptivity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcmq/local_system.hpp"

namespace lcmq {

void validate(const AdaptiveConfig& config) {
    if (config.c_min < 1) throw std::invalid_argument("adaptive config: c_min must be >= 1");
    if (config.c_max < config.c_min)
        throw std::invalid_argument("adaptive config: c_max must be >= c_min");
    if (!(config.tau > 0.0)) throw std::invalid_argument("adaptive config: tau must be positive");
    if (config.max_splits < 1)
        throw std::invalid_argument("adaptive config: max_splits must be >= 1");
    if (!(config.theta > 0.0 && config.theta < 1.0))
        throw std::invalid_argument("adaptive config: theta must lie in (0, 1)");
    if (config.delta_p < 0)
        throw std::invalid_argument("adaptive config: delta_p must be >= 0");
    if (!(config.rho > 0.0 && config.rho < 1.0))
        throw std::invalid_argument("adaptive config: rho must lie in (0, 1)");
    if (!(config.epsilon > 0.0))
        throw std::invalid_argument("adaptive config: epsilon must be positive");
    if (config.max_cycles < 1)
        throw std::invalid_argument("adaptive config: max_cycles must be >= 1");
    if (config.node_cap < 1)
        throw std::invalid_argument("adaptive config: node_cap must be >= 1");
    if (config.cells_per_axis[0] < 1 || config.cells_per_axis[1] < 1)
        throw std::invalid_argument("adaptive config: cell counts must be >= 1");
}

const char* to_string(CycleAction action) {
    switch (action) {
        case CycleAction::CEnrich: return "CEnrich";
        case CycleAction::HRefine: return "HRefine";
        case CycleAction::Mixed: return "Mixed";
        case CycleAction::Converged: return "Converged";
    }
    return "?";
}

CellReport cell_indicators(const MarkerCell& cell, int cell_index,
                           const NodeCloud& cloud, const Solution& solution,
                           const KernelSpec& spec, const ProblemSpec& problem,
                           int delta_p, double tau) {
    const int nearest = knn(cloud, cell.center, 1)[0];
    const int base_card = cloud.cover_size[nearest];
    const int enriched_card = std::min(base_card + delta_p, cloud.size());

    const double base = evaluate_field(cloud, solution.nodal_values, spec,
                                       OperatorTag::Laplacian, cell.center, base_card);
    const double enriched = evaluate_field(cloud, solution.nodal_values, spec,
                                           OperatorTag::Laplacian, cell.center, enriched_card);

    const double h2 = cell.diameter * cell.diameter;
    CellReport report;
    report.cell_index = cell_index;
    report.indicator = h2 * std::abs(enriched - problem.rhs(cell.center));
    report.classifier = h2 * std::abs(enriched - base);
    report.marked = report.indicator > tau;
    return report;
}

AdaptOutcome adapt_cycle(NodeCloud& cloud, const AdaptiveConfig& config,
                         const BoxDomain& domain,
                         const std::vector<MarkerCell>& cells,
                         const std::vector<CellReport>& reports) {
    if (cells.size() != reports.size())
        throw std::invalid_argument("adapt_cycle: cell/report count mismatch");
    if (!(config.min_insert_spacing > 0.0))
        throw std::invalid_argument("adapt_cycle: min_insert_spacing must be resolved");

    int marked_count = 0;
    for (const CellReport& r : reports) marked_count += r.marked ? 1 : 0;

    AdaptOutcome outcome;
    if (marked_count == 0) return outcome;

    const double marked_fraction = static_cast<double>(marked_count) / reports.size();
    bool headroom = false;
    for (int c : cloud.cover_size) headroom = headroom || c < config.c_max;

    const bool enrich_branch = marked_fraction >= config.theta && headroom;

    // Insertion candidates are (indicator, cell index) pairs, worst first.
    std::vector<std::pair<double, int>> candidates;
    if (enrich_branch) {
        for (const CellReport& r : reports) {
            if (!r.marked) continue;
            const MarkerCell& cell = cells[r.cell_index];
            if (r.classifier >= config.rho * (r.indicator + config.epsilon)) {
                bool any_inside = false;
                for (int i = 0; i < cloud.size(); ++i) {
                    if (!cell_contains(cell, domain, cloud.points[i], cloud.dim)) continue;
                    any_inside = true;
                    const int grown = std::min(cloud.cover_size[i] + config.delta_p, config.c_max);
                    if (grown > cloud.cover_size[i]) {
                        cloud.cover_size[i] = grown;
                        ++outcome.enriched_nodes;
                    }
                }
                if (!any_inside) candidates.emplace_back(r.indicator, r.cell_index);
            } else {
                candidates.emplace_back(r.indicator, r.cell_index);
            }
        }
    } else {
        for (const CellReport& r : reports)
            if (r.marked) candidates.emplace_back(r.indicator, r.cell_index);
    }

    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    for (const auto& [indicator, cell_index] : candidates) {
        if (outcome.inserted_nodes >= config.max_splits) break;
        if (cloud.size() >= config.node_cap) break;
        const Point candidate = cells[cell_index].center;
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& p : cloud.points) nearest = std::min(nearest, dist(candidate, p));
        if (nearest < config.min_insert_spacing) continue;
        cloud.points.push_back(candidate);
        cloud.cover_size.push_back(config.c_min);
        cloud.is_boundary.push_back(0);
        ++outcome.inserted_nodes;
    }

    if (outcome.enriched_nodes > 0 && outcome.inserted_nodes > 0)
        outcome.action = CycleAction::Mixed;
    else if (outcome.enriched_nodes > 0)
        outcome.action = CycleAction::CEnrich;
    else if (outcome.inserted_nodes > 0)
        outcome.action = CycleAction::HRefine;
    else
        outcome.action = enrich_branch ? CycleAction::CEnrich : CycleAction::HRefine;
    return outcome;
}

AdaptiveResult run_adaptive(const ProblemSpec& problem, NodeCloud initial,
                            const KernelSpec& spec, AdaptiveConfig config,
                            const ProbeSet* probes, const CycleObserver& observer) {
    validate(config);
    if (config.c_max > initial.size())
        throw std::invalid_argument(
            "run_adaptive: c_max exceeds the cloud size, covers could not be built");
    if (config.min_insert_spacing <= 0.0)
        config.min_insert_spacing = 0.25 * fill_distance(initial);
    if (!(config.min_insert_spacing > 0.0))
        throw std::invalid_argument("run_adaptive: could not resolve a positive insert spacing");

    const std::vector<MarkerCell> cells = build_marker_grid(problem.domain, config.cells_per_axis);

    ProbeSet default_probes;
    if (!probes && problem.has_exact()) {
        default_probes = uniform_probe_set(problem.domain, problem.dimension == 1 ? 1001 : 101);
        probes = &default_probes;
    }

    using clock = std::chrono::steady_clock;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    AdaptiveResult result;
    result.cloud = initial;
    NodeCloud cloud = std::move(initial);

    for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
        const auto t0 = clock::now();
        const SparseSystem system = assemble(cloud, spec, problem);
        const Solution solution = solve(system);
        const auto t1 = clock::now();

        std::vector<CellReport> reports;
        reports.reserve(cells.size());
        double max_indicator = 0.0;
        for (int g = 0; g < static_cast<int>(cells.size()); ++g) {
            reports.push_back(cell_indicators(cells[g], g, cloud, solution, spec, problem,
                                              config.delta_p, config.tau));
            max_indicator = std::max(max_indicator, reports.back().indicator);
        }

        CycleRecord record;
        record.cycle = cycle;
        record.node_count = cloud.size();
        record.max_cover = *std::max_element(cloud.cover_size.begin(), cloud.cover_size.end());
        record.max_indicator = max_indicator;
        record.rmse = nan;
        record.max_abs_error = nan;
        if (problem.has_exact() && probes) {
            const ErrorReport errors = error_report(problem, cloud, solution, spec, *probes);
            record.rmse = errors.rmse;
            record.max_abs_error = errors.max_abs;
        }
        record.solve_seconds = std::chrono::duration<double>(t1 - t0).count();

        result.solution = solution;
        result.cloud = cloud;

        if (max_indicator <= config.tau) {
            record.action = CycleAction::Converged;
            record.adapt_seconds = std::chrono::duration<double>(clock::now() - t1).count();
            result.records.push_back(record);
            if (observer) observer(result.cloud, system, solution, record);
            result.converged = true;
            return result;
        }

        const AdaptOutcome outcome = adapt_cycle(cloud, config, problem.domain, cells, reports);
        record.action = outcome.action;
        record.adapt_seconds = std::chrono::duration<double>(clock::now() - t1).count();
        result.records.push_back(record);
        if (observer) observer(result.cloud, system, solution, record);

        // A cycle that changed nothing would repeat forever; stop and report
        // the run as not converged, like an exhausted cycle budget.
        if (outcome.enriched_nodes == 0 && outcome.inserted_nodes == 0) return result;
    }
    return result;
}

}  // namespace lcmq
