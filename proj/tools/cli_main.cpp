#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "puccilab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"puccilab: radial extremal-operator verification lab"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    bool trajectory = false;

    const std::pair<const char*, const char*> commands[] = {
        {"verify", "build a family instance and verify residual/continuity/boundary"},
        {"sweep", "norm sweep over a parameter grid, CSV output"},
        {"bounds", "closed-form lower bounds for a ball"},
        {"eigen", "radial principal eigenvalue by shooting"},
        {"classify", "level-one decomposition of the positive part"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_dir, "output directory (default .)");
        sub->add_flag("--trajectory", trajectory, "also export the shot trajectory (eigen)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return 2;
    }
    puccilab::Json config;
    try {
        config = puccilab::Json::parse(in);
    } catch (const std::exception& err) {
        std::cerr << "error: config is not valid JSON: " << err.what() << "\n";
        return 2;
    }

    const puccilab::RunOutcome outcome =
        puccilab::run_command(command, config, out_dir, trajectory);
    if (puccilab::log_level() >= 1) {
        std::cerr << outcome.message << "\n";
        for (const auto& f : outcome.files_written) std::cerr << "wrote " << f << "\n";
    }
    if (outcome.exit_code != 0 && puccilab::log_level() == 0)
        std::cerr << outcome.message << "\n";
    return outcome.exit_code;
}
