#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lcmq/run_config.hpp"

using namespace lcmq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("lcmq_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_config(const TempDir& dir, const std::string& text, const char* name = "run.cfg") {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << text;
    return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), "cannot open " << p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), "cannot open " << p.string());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::string strip_timings(const std::string& row) {
    auto fields = split(row);
    REQUIRE(fields.size() == 9);
    std::string joined;
    for (std::size_t i = 0; i + 2 < fields.size(); ++i)
        joined += (i ? "," : "") + fields[i];
    return joined;
}

}  // namespace

TEST_CASE("benchmark presets carry the calibrated settings") {
    const RunConfig one = preset("example1");
    CHECK(one.kernel.family == Family::CMQ);
    CHECK(one.kernel.shape == 0.8);
    CHECK(one.initial_nodes == std::array<int, 2>{50, 1});
    CHECK(one.probe_per_axis == 1001);
    CHECK(one.adaptive.c_min == 7);
    CHECK(one.adaptive.c_max == 50);
    CHECK(one.adaptive.tau == 1e-5);
    CHECK(one.adaptive.delta_p == 22);
    CHECK(one.adaptive.cells_per_axis == std::array<int, 2>{150, 1});
    CHECK(one.adaptive.min_insert_spacing == 0.5 * (2.0 / 49.0));

    const RunConfig two = preset("example2");
    CHECK(two.initial_nodes == std::array<int, 2>{20, 20});
    CHECK(two.probe_per_axis == 101);
    CHECK(two.adaptive.c_min == 50);
    CHECK(two.adaptive.c_max == 60);
    CHECK(two.adaptive.tau == 8e-5);
    CHECK(two.adaptive.delta_p == 2);
    CHECK(two.adaptive.cells_per_axis == std::array<int, 2>{10, 10});
    CHECK(two.adaptive.min_insert_spacing == 0.5 * (1.0 / 19.0));

    for (const RunConfig* rc : {&one, &two}) {
        CHECK(rc->adaptive.theta == 0.001);
        CHECK(rc->adaptive.rho == 0.1);
        CHECK(rc->adaptive.epsilon == 1e-14);
        CHECK(rc->adaptive.max_splits == 20);
        CHECK(rc->adaptive.max_cycles == 30);
        CHECK(rc->adaptive.node_cap == 5000);
        CHECK_NOTHROW(validate(rc->adaptive));
    }

    CHECK(make_problem(one).dimension == 1);
    CHECK(make_initial_cloud(one).size() == 50);
    CHECK(make_problem(two).dimension == 2);
    const NodeCloud grid = make_initial_cloud(two);
    CHECK(grid.size() == 400);
    CHECK(grid.cover_size[0] == 50);

    CHECK_THROWS_AS(preset("example9"), std::invalid_argument);
}

TEST_CASE("config files override the preset key by key") {
    TempDir dir;
    const fs::path cfg = write_config(dir,
                                      "# overrides on top of a preset\n"
                                      "kernel.c = 1.1\n"
                                      "adaptive.tau = 2e-6   # trailing comment\n"
                                      "problem = example2\n"
                                      "initial_nodes = 12, 9\n"
                                      "adaptive.cells_per_axis = 5\n"
                                      "seed = 42\n"
                                      "output_dir = some/dir\n"
                                      "kernel.family = mq\n");

    const RunConfig loaded = load_config(cfg.string());
    CHECK(loaded.problem == "example2");
    CHECK(loaded.kernel.family == Family::MQ);
    CHECK(loaded.kernel.shape == 1.1);
    CHECK(loaded.adaptive.tau == 2e-6);
    CHECK(loaded.initial_nodes == std::array<int, 2>{12, 9});
    CHECK(loaded.adaptive.cells_per_axis == std::array<int, 2>{5, 5});
    CHECK(loaded.seed == 42);
    CHECK(loaded.output_dir == "some/dir");

    // Untouched keys keep the example2 preset values even though the problem
    // key appears mid-file.
    CHECK(loaded.adaptive.c_min == 50);
    CHECK(loaded.adaptive.delta_p == 2);
    CHECK(loaded.probe_per_axis == 101);
}

TEST_CASE("an empty config file is the quartic preset") {
    TempDir dir;
    const RunConfig loaded = load_config(write_config(dir, "# nothing but comments\n\n").string());
    const RunConfig expected = preset("example1");
    CHECK(loaded.problem == expected.problem);
    CHECK(loaded.kernel.shape == expected.kernel.shape);
    CHECK(loaded.initial_nodes == expected.initial_nodes);
    CHECK(loaded.adaptive.tau == expected.adaptive.tau);
    CHECK(loaded.adaptive.cells_per_axis == expected.adaptive.cells_per_axis);
}

TEST_CASE("malformed configs are rejected") {
    TempDir dir;
    auto rejects = [&](const std::string& text) {
        const fs::path p = write_config(dir, text, "bad.cfg");
        CHECK_THROWS_AS(load_config(p.string()), std::invalid_argument);
    };
    rejects("no_such_key = 1\n");
    rejects("adaptive.tau = abc\n");
    rejects("kernel.family = gaussian\n");
    rejects("just a line without equals\n");
    rejects("= 5\n");
    rejects("initial_nodes = 1, 2, 3\n");
    rejects("adaptive.tau =\n");
    rejects("problem = example9\n");

    CHECK_THROWS_AS(load_config((dir.path / "missing.cfg").string()), std::invalid_argument);

    RunConfig rc = preset("example1");
    CHECK_THROWS_AS(apply_key(rc, "bogus", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_key(rc, "seed", "12abc"), std::invalid_argument);
}

TEST_CASE("csv numbers survive a parse round trip") {
    CHECK(csv_double(1.0 / 3.0) == "0.33333333333333331");
    for (double v : {1.0 / 3.0, 7.5639263469919816e-05, 3.141592653589793, 1e300, 5e-324, 0.0,
                     -2.5, 2.0 / 49.0}) {
        const std::string text = csv_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("the solve command writes the run artifacts") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.output_dir = (dir.path / "run").string();

    CHECK(cmd_solve(rc) == 0);

    const auto cycles = read_lines(dir.path / "run" / "cycles.csv");
    REQUIRE(cycles.size() >= 2);
    CHECK(cycles[0] == "cycle,nodes,max_cover,rmse,max_abs_error,max_indicator,action,solve_s,adapt_s");
    CHECK(static_cast<int>(cycles.size()) - 1 <= rc.adaptive.max_cycles);
    CHECK(split(cycles[1])[0] == "1");
    CHECK(split(cycles[1])[1] == "50");
    CHECK(split(cycles.back())[6] == "Converged");

    const auto solution = read_lines(dir.path / "run" / "solution.csv");
    REQUIRE(!solution.empty());
    CHECK(solution[0] == "x,u_h,u_star,abs_error");
    CHECK(solution.size() == 1u + 1001u);

    const auto covers = read_lines(dir.path / "run" / "covers.csv");
    REQUIRE(covers.size() >= 2);
    CHECK(covers[0] == "x,cover_size");
    const int final_nodes = std::atoi(split(cycles.back())[1].c_str());
    CHECK(static_cast<int>(covers.size()) - 1 == final_nodes);
    for (std::size_t i = 1; i < covers.size(); ++i) {
        const int c = std::atoi(split(covers[i])[1].c_str());
        CHECK(c >= rc.adaptive.c_min);
        CHECK(c <= rc.adaptive.c_max);
    }
}

TEST_CASE("budget exhaustion exits with its own status") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.adaptive.tau = 1e-30;
    rc.adaptive.max_cycles = 2;
    rc.output_dir = (dir.path / "run").string();

    CHECK(cmd_solve(rc) == 2);
    const auto cycles = read_lines(dir.path / "run" / "cycles.csv");
    REQUIRE(cycles.size() == 3);
    CHECK(split(cycles.back())[6] != "Converged");
}

TEST_CASE("solve failures exit nonzero") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.problem = "example9";
    rc.output_dir = (dir.path / "run").string();
    CHECK(cmd_solve(rc) == 1);

    RunConfig blocked = preset("example1");
    const fs::path blocker = dir.path / "blocker";
    std::ofstream(blocker) << "occupied";
    blocked.output_dir = (blocker / "sub").string();
    CHECK(cmd_solve(blocked) == 1);
}

TEST_CASE("the matrix dump mirrors the first-cycle system") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.adaptive.tau = 1e300;  // one cycle is enough for the dump
    rc.output_dir = (dir.path / "run").string();

    CHECK(cmd_solve(rc, true) == 0);
    const auto lines = read_lines(dir.path / "run" / "matrix.txt");
    CHECK(lines.size() == 48u * 7u + 2u);
    std::istringstream first(lines[0]);
    int row = -1, col = -1;
    double value = 0.0;
    first >> row >> col >> value;
    CHECK(!first.fail());
    CHECK(row == 0);
}

TEST_CASE("repeat runs are byte-identical apart from timings") {
    TempDir dir;
    RunConfig a = preset("example1");
    a.output_dir = (dir.path / "a").string();
    RunConfig b = preset("example1");
    b.output_dir = (dir.path / "b").string();

    REQUIRE(cmd_solve(a) == 0);
    REQUIRE(cmd_solve(b) == 0);

    CHECK(read_all(dir.path / "a" / "solution.csv") == read_all(dir.path / "b" / "solution.csv"));
    CHECK(read_all(dir.path / "a" / "covers.csv") == read_all(dir.path / "b" / "covers.csv"));

    const auto rows_a = read_lines(dir.path / "a" / "cycles.csv");
    const auto rows_b = read_lines(dir.path / "b" / "cycles.csv");
    REQUIRE(rows_a.size() == rows_b.size());
    for (std::size_t i = 1; i < rows_a.size(); ++i)
        CHECK(strip_timings(rows_a[i]) == strip_timings(rows_b[i]));
}

TEST_CASE("sweep rows cross-check the first solve cycle") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.output_dir = (dir.path / "solve").string();
    REQUIRE(cmd_solve(rc) == 0);
    const auto cycle_one = split(read_lines(dir.path / "solve" / "cycles.csv")[1]);

    RunConfig sweep_rc = preset("example1");
    sweep_rc.output_dir = (dir.path / "sweep").string();
    CHECK(cmd_sweep(sweep_rc, {Family::CMQ, Family::MQ}, {0.8, 1.2}) == 0);

    const auto rows = read_lines(dir.path / "sweep" / "sweep.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "family,c,rmse,max_abs_error");
    CHECK(split(rows[1])[0] == "CMQ");
    CHECK(split(rows[1])[1] == csv_double(0.8));
    CHECK(split(rows[2])[0] == "CMQ");
    CHECK(split(rows[2])[1] == csv_double(1.2));
    CHECK(split(rows[3])[0] == "MQ");
    CHECK(split(rows[4])[0] == "MQ");

    // The CMQ c = 0.8 leg solves the same fixed cloud the adaptive run
    // starts from, so its errors match cycle 1 digit for digit.
    CHECK(split(rows[1])[2] == cycle_one[3]);
    CHECK(split(rows[1])[3] == cycle_one[4]);
}

TEST_CASE("sweep rejects an empty request") {
    TempDir dir;
    RunConfig rc = preset("example1");
    rc.output_dir = (dir.path / "sweep").string();
    CHECK(cmd_sweep(rc, {}, {0.8}) == 1);
    CHECK(cmd_sweep(rc, {Family::CMQ}, {}) == 1);
}

TEST_CASE("the kernel self-check command passes") {
    CHECK(cmd_kernel_check() == 0);
}
