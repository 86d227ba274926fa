#pragma once

#include <array>
#include <string>
#include <vector>

#include "lcmq/adaptivity.hpp"
#include "lcmq/kernels.hpp"

namespace lcmq {

// Fully resolved run description: problem choice, kernel, initial lattice,
// controller knobs, probe resolution, output location.
struct RunConfig {
    std::string problem = "example1";
    KernelSpec kernel;
    std::array<int, 2> initial_nodes{50, 1};
    AdaptiveConfig adaptive;
    int probe_per_axis = 1001;
    std::string output_dir = "out";
    long seed = 0;  // consumed only by randomized harnesses; the solver is deterministic
};

// Built-in defaults for a named problem ("example1" or "example2").
RunConfig preset(const std::string& problem);

// Flat key = value configuration ('#' starts a comment). The `problem` key
// selects the preset; every other key overrides one field of it. An empty
// file yields the example1 preset. Unknown keys and malformed values throw
// std::invalid_argument.
RunConfig load_config(const std::string& path);

// Applies one key/value pair to an existing config (exposed for tests).
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

ProblemSpec make_problem(const RunConfig& config);
NodeCloud make_initial_cloud(const RunConfig& config);

// Adaptive run writing cycles.csv, solution.csv, and covers.csv into
// config.output_dir (created if absent). Optionally dumps the cycle-1 system
// matrix in coordinate format. Returns 0 on convergence, 2 on an exhausted
// budget, 1 on any error.
int cmd_solve(const RunConfig& config, bool dump_matrix_flag = false);

// Fixed-cloud, non-adaptive sweep over families x shape values, writing
// sweep.csv into config.output_dir. Same exit conventions as cmd_solve
// except budget exhaustion cannot occur.
int cmd_sweep(const RunConfig& config, const std::vector<Family>& families,
              const std::vector<double>& c_values);

// Prints the worst analytic-vs-finite-difference Laplacian discrepancy and
// returns 0 iff it is at most 1e-6.
int cmd_kernel_check();

// Value formatting shared by all CSV writers: 17 significant digits.
std::string csv_double(double v);

}  // namespace lcmq
