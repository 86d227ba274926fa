#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcmq/run_config.hpp"

namespace {

lcmq::RunConfig resolve_config(const std::string& config_path, const std::string& out_override) {
    lcmq::RunConfig config =
        config_path.empty() ? lcmq::preset("example1") : lcmq::load_config(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive local coupled multiquadric collocation solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;

    auto* solve = app.add_subcommand("solve", "run the adaptive solver and write CSV reports");
    solve->add_option("--config", config_path, "key = value configuration file");
    solve->add_option("--out", out_override, "output directory (overrides the config)");
    bool dump = false;
    solve->add_flag("--dump-matrix", dump, "also dump the cycle-1 system matrix");

    auto* sweep = app.add_subcommand("sweep", "non-adaptive shape parameter sweep");
    sweep->add_option("--config", config_path, "key = value configuration file");
    sweep->add_option("--out", out_override, "output directory (overrides the config)");
    std::vector<std::string> family_names{"cmq"};
    sweep->add_option("--family", family_names, "kernel families (cmq, mq)");
    std::vector<double> c_values;
    sweep->add_option("--c", c_values, "shape parameter values")->required();

    auto* kernel = app.add_subcommand("kernel-check", "finite-difference check of the kernel Laplacians");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return lcmq::cmd_solve(resolve_config(config_path, out_override), dump);
        if (sweep->parsed()) {
            std::vector<lcmq::Family> families;
            for (const std::string& name : family_names) {
                if (name == "cmq" || name == "CMQ")
                    families.push_back(lcmq::Family::CMQ);
                else if (name == "mq" || name == "MQ")
                    families.push_back(lcmq::Family::MQ);
                else
                    throw std::invalid_argument("unknown kernel family '" + name + "'");
            }
            return lcmq::cmd_sweep(resolve_config(config_path, out_override), families, c_values);
        }
        if (kernel->parsed()) return lcmq::cmd_kernel_check();
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 1;
}
