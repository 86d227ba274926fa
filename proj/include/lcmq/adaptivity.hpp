#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lcmq/assembly.hpp"
#include "lcmq/geometry.hpp"
#include "lcmq/kernels.hpp"
#include "lcmq/problems.hpp"

namespace lcmq {

// Controller knobs for the enrich-then-refine cycle.
//
// min_insert_spacing <= 0 means "resolve at run start" as 0.25 times the fill
// distance of the initial cloud; a positive value is used as given. The
// benchmark presets override the factor, see run_config.cpp.
struct AdaptiveConfig {
    int c_min = 7;
    int c_max = 50;
    double tau = 1e-5;
    int max_splits = 20;
    double theta = 0.3;
    int delta_p = 2;
    double rho = 0.1;
    double epsilon = 1e-14;
    int max_cycles = 30;
    int node_cap = 5000;
    double min_insert_spacing = 0.0;
    std::array<int, 2> cells_per_axis{100, 1};
};

// Throws std::invalid_argument when a knob is out of range.
void validate(const AdaptiveConfig& config);

enum class CycleAction { CEnrich, HRefine, Mixed, Converged };

const char* to_string(CycleAction action);

// Per-cell diagnostics of one cycle. indicator is h^2 |L u_enr - f| at the
// cell center, classifier is h^2 |L u_enr - L u_base| there, and marked holds
// exactly when indicator > tau.
struct CellReport {
    int cell_index = -1;
    double indicator = 0.0;
    double classifier = 0.0;
    bool marked = false;
};

struct CycleRecord {
    int cycle = 0;
    int node_count = 0;
    int max_cover = 0;
    double rmse = 0.0;
    double max_abs_error = 0.0;
    double max_indicator = 0.0;
    CycleAction action = CycleAction::Converged;
    double solve_seconds = 0.0;
    double adapt_seconds = 0.0;
};

// Evaluates the indicator pair at one cell center. Both evaluations reuse the
// already-solved nodal values; the base field uses the cover cardinality of
// the node nearest the cell center and the enriched field grows it by
// delta_p (clamped to the cloud size). No system is re-solved.
CellReport cell_indicators(const MarkerCell& cell, int cell_index,
                           const NodeCloud& cloud, const Solution& solution,
                           const KernelSpec& spec, const ProblemSpec& problem,
                           int delta_p, double tau);

struct AdaptOutcome {
    CycleAction action = CycleAction::Converged;
    int enriched_nodes = 0;
    int inserted_nodes = 0;
};

// Applies one adaptation step to the cloud given the cell reports:
// enrichment of covers inside well-classified marked cells when enough of
// the grid is marked and headroom remains, node insertion at the worst cell
// centers otherwise. Cover sizes never decrease and insertions respect
// max_splits, node_cap, and the minimum separation (which must be resolved
// to a positive value here).
AdaptOutcome adapt_cycle(NodeCloud& cloud, const AdaptiveConfig& config,
                         const BoxDomain& domain,
                         const std::vector<MarkerCell>& cells,
                         const std::vector<CellReport>& reports);

// solution and cloud belong to the last completed solve, so evaluating the
// solution against this cloud is always consistent even when the run stopped
// after an adaptation that was never solved.
struct AdaptiveResult {
    std::vector<CycleRecord> records;
    Solution solution;
    NodeCloud cloud;
    bool converged = false;
};

// Called once per cycle with the state that was just solved and scored,
// before any adaptation is applied to it.
using CycleObserver = std::function<void(const NodeCloud&, const SparseSystem&,
                                         const Solution&, const CycleRecord&)>;

// Runs solve / score / adapt cycles until the worst indicator drops to tau,
// the cycle budget runs out, or an adaptation step changes nothing (a stall;
// reported as non-converged like budget exhaustion). Probe errors enter the
// records only when the problem has an exact solution; passing probes = null
// uses a default probe lattice.
AdaptiveResult run_adaptive(const ProblemSpec& problem, NodeCloud initial,
                            const KernelSpec& spec, AdaptiveConfig config,
                            const ProbeSet* probes = nullptr,
                            const CycleObserver& observer = {});

}  // namespace lcmq
