#include "lcmq/run_config.hpp"

#include <cctype>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lcmq/local_system.hpp"

namespace lcmq {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (trim(value.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (trim(value.substr(pos)).empty() && v >= INT_MIN && v <= INT_MAX)
            return static_cast<int>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad integer value for " + key + ": '" + value + "'");
}

// One or two integers, separated by spaces or a comma. A single value is
// replicated across both axes.
std::array<int, 2> parse_axis_counts(const std::string& key, std::string value) {
    for (char& ch : value)
        if (ch == ',') ch = ' ';
    std::istringstream in(value);
    std::array<int, 2> counts{0, 0};
    std::string token;
    int found = 0;
    while (in >> token) {
        if (found >= 2)
            throw std::invalid_argument("config: too many values for " + key);
        counts[found++] = parse_int(key, token);
    }
    if (found == 0) throw std::invalid_argument("config: missing value for " + key);
    if (found == 1) counts[1] = counts[0];
    return counts;
}

Family parse_family(const std::string& value) {
    std::string v = value;
    for (char& ch : v) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (v == "cmq") return Family::CMQ;
    if (v == "mq") return Family::MQ;
    throw std::invalid_argument("config: unknown kernel family '" + value + "'");
}

const char* family_name(Family family) { return family == Family::CMQ ? "CMQ" : "MQ"; }

}  // namespace

RunConfig preset(const std::string& problem) {
    RunConfig config;
    config.problem = problem;
    config.kernel = {Family::CMQ, 0.8};

    if (problem == "example1") {
        config.initial_nodes = {50, 1};
        config.probe_per_axis = 1001;
        config.adaptive.c_min = 7;
        config.adaptive.c_max = 50;
        config.adaptive.tau = 1e-5;
        config.adaptive.delta_p = 22;
        config.adaptive.cells_per_axis = {150, 1};
        config.adaptive.min_insert_spacing = 0.5 * (2.0 / 49.0);
    } else if (problem == "example2") {
        config.initial_nodes = {20, 20};
        config.probe_per_axis = 101;
        config.adaptive.c_min = 50;
        config.adaptive.c_max = 60;
        config.adaptive.tau = 8e-5;
        config.adaptive.delta_p = 2;
        config.adaptive.cells_per_axis = {10, 10};
        config.adaptive.min_insert_spacing = 0.5 * (1.0 / 19.0);
    } else {
        throw std::invalid_argument("unknown problem '" + problem + "'");
    }

    // Shared controller settings: marked-fraction gate, classifier margin,
    // insertion and budget caps.
    config.adaptive.theta = 0.001;
    config.adaptive.rho = 0.1;
    config.adaptive.epsilon = 1e-14;
    config.adaptive.max_splits = 20;
    config.adaptive.max_cycles = 30;
    config.adaptive.node_cap = 5000;
    return config;
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "problem") {
        config.problem = value;
    } else if (key == "kernel.family") {
        config.kernel.family = parse_family(value);
    } else if (key == "kernel.c") {
        config.kernel.shape = parse_double(key, value);
    } else if (key == "initial_nodes") {
        config.initial_nodes = parse_axis_counts(key, value);
    } else if (key == "probe_per_axis") {
        config.probe_per_axis = parse_int(key, value);
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "seed") {
        config.seed = parse_int(key, value);
    } else if (key == "adaptive.c_min") {
        config.adaptive.c_min = parse_int(key, value);
    } else if (key == "adaptive.c_max") {
        config.adaptive.c_max = parse_int(key, value);
    } else if (key == "adaptive.tau") {
        config.adaptive.tau = parse_double(key, value);
    } else if (key == "adaptive.max_splits") {
        config.adaptive.max_splits = parse_int(key, value);
    } else if (key == "adaptive.theta") {
        config.adaptive.theta = parse_double(key, value);
    } else if (key == "adaptive.delta_p") {
        config.adaptive.delta_p = parse_int(key, value);
    } else if (key == "adaptive.rho") {
        config.adaptive.rho = parse_double(key, value);
    } else if (key == "adaptive.epsilon") {
        config.adaptive.epsilon = parse_double(key, value);
    } else if (key == "adaptive.max_cycles") {
        config.adaptive.max_cycles = parse_int(key, value);
    } else if (key == "adaptive.node_cap") {
        config.adaptive.node_cap = parse_int(key, value);
    } else if (key == "adaptive.min_insert_spacing") {
        config.adaptive.min_insert_spacing = parse_double(key, value);
    } else if (key == "adaptive.cells_per_axis") {
        config.adaptive.cells_per_axis = parse_axis_counts(key, value);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");

    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key on line " + std::to_string(line_no));
        pairs.emplace_back(key, value);
    }

    std::string problem = "example1";
    for (const auto& [key, value] : pairs)
        if (key == "problem") problem = value;

    RunConfig config = preset(problem);
    for (const auto& [key, value] : pairs)
        if (key != "problem") apply_key(config, key, value);
    return config;
}

ProblemSpec make_problem(const RunConfig& config) {
    if (config.problem == "example1") return example1();
    if (config.problem == "example2") return example2();
    throw std::invalid_argument("unknown problem '" + config.problem + "'");
}

NodeCloud make_initial_cloud(const RunConfig& config) {
    return lattice_cloud(make_problem(config).domain, config.initial_nodes,
                         config.adaptive.c_min);
}

std::string csv_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_cycles_csv(const std::filesystem::path& path,
                      const std::vector<CycleRecord>& records) {
    std::ofstream out = open_csv(path);
    out << "cycle,nodes,max_cover,rmse,max_abs_error,max_indicator,action,solve_s,adapt_s\n";
    for (const CycleRecord& r : records)
        out << r.cycle << ',' << r.node_count << ',' << r.max_cover << ','
            << csv_double(r.rmse) << ',' << csv_double(r.max_abs_error) << ','
            << csv_double(r.max_indicator) << ',' << to_string(r.action) << ','
            << csv_double(r.solve_seconds) << ',' << csv_double(r.adapt_seconds) << '\n';
}

void write_solution_csv(const std::filesystem::path& path, const ProblemSpec& problem,
                        const NodeCloud& cloud, const Solution& solution,
                        const KernelSpec& spec, const ProbeSet& probes) {
    std::ofstream out = open_csv(path);
    const bool two_d = problem.dimension == 2;
    out << (two_d ? "x,y,u_h,u_star,abs_error\n" : "x,u_h,u_star,abs_error\n");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const Point& p : probes.points) {
        const double uh =
            evaluate_field(cloud, solution.nodal_values, spec, OperatorTag::Identity, p);
        const double exact = problem.has_exact() ? problem.exact(p) : nan;
        out << csv_double(p[0]) << ',';
        if (two_d) out << csv_double(p[1]) << ',';
        out << csv_double(uh) << ',' << csv_double(exact) << ','
            << csv_double(std::abs(uh - exact)) << '\n';
    }
}

void write_covers_csv(const std::filesystem::path& path, const NodeCloud& cloud) {
    std::ofstream out = open_csv(path);
    out << (cloud.dim == 2 ? "x,y,cover_size\n" : "x,cover_size\n");
    for (int i = 0; i < cloud.size(); ++i) {
        out << csv_double(cloud.points[i][0]) << ',';
        if (cloud.dim == 2) out << csv_double(cloud.points[i][1]) << ',';
        out << cloud.cover_size[i] << '\n';
    }
}

}  // namespace

int cmd_solve(const RunConfig& config, bool dump_matrix_flag) {
    try {
        const ProblemSpec problem = make_problem(config);
        const NodeCloud initial = make_initial_cloud(config);
        const ProbeSet probes = uniform_probe_set(problem.domain, config.probe_per_axis);
        const std::filesystem::path dir(config.output_dir);
        std::filesystem::create_directories(dir);

        CycleObserver observer;
        if (dump_matrix_flag) {
            observer = [&dir](const NodeCloud&, const SparseSystem& system, const Solution&,
                              const CycleRecord& record) {
                if (record.cycle != 1) return;
                std::ofstream out = open_csv(dir / "matrix.txt");
                dump_matrix(system, out);
            };
        }

        const AdaptiveResult result =
            run_adaptive(problem, initial, config.kernel, config.adaptive, &probes, observer);

        write_cycles_csv(dir / "cycles.csv", result.records);
        write_solution_csv(dir / "solution.csv", problem, result.cloud, result.solution,
                           config.kernel, probes);
        write_covers_csv(dir / "covers.csv", result.cloud);

        const CycleRecord& last = result.records.back();
        std::printf("%s: %s after %d cycle(s), %d nodes, max cover %d, max indicator %s\n",
                    config.problem.c_str(), result.converged ? "converged" : "budget exhausted",
                    last.cycle, last.node_count, last.max_cover,
                    csv_double(last.max_indicator).c_str());
        return result.converged ? 0 : 2;
    } catch (const std::exception& err) {
        std::cerr << "solve failed: " << err.what() << '\n';
        return 1;
    }
}

int cmd_sweep(const RunConfig& config, const std::vector<Family>& families,
              const std::vector<double>& c_values) {
    try {
        if (families.empty() || c_values.empty())
            throw std::invalid_argument("sweep: need at least one family and one shape value");

        const ProblemSpec problem = make_problem(config);
        const NodeCloud cloud = make_initial_cloud(config);
        const ProbeSet probes = uniform_probe_set(problem.domain, config.probe_per_axis);

        const std::vector<SweepRow> rows =
            shape_sweep(problem, cloud, families, c_values, probes);

        const std::filesystem::path dir(config.output_dir);
        std::filesystem::create_directories(dir);
        std::ofstream out = open_csv(dir / "sweep.csv");
        out << "family,c,rmse,max_abs_error\n";
        for (const SweepRow& row : rows)
            out << family_name(row.family) << ',' << csv_double(row.c) << ','
                << csv_double(row.rmse) << ',' << csv_double(row.max_abs) << '\n';

        std::printf("sweep: %zu rows written\n", rows.size());
        return 0;
    } catch (const std::exception& err) {
        std::cerr << "sweep failed: " << err.what() << '\n';
        return 1;
    }
}

int cmd_kernel_check() {
    const double gap = kernel_check(1000, 0x5eed);
    std::printf("kernel check: max relative discrepancy %.3e\n", gap);
    return gap <= 1e-6 ? 0 : 1;
}

}  // namespace lcmq
