// qtsp — simulator and analysis toolkit for a quantum search heuristic over
// random traveling-salesman instances. Subcommands generate instances, report
// cost/phase statistics, run the quantum amplitude-amplification simulation
// and the classical random-query baseline, compare the two, and sweep over
// instance sizes. All outputs are deterministic functions of the declared
// seeds.

#include <cstring>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtsp/errors.hpp"
#include "qtsp/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitResourceLimit = 3;

/// Finds --config PATH or --config=PATH anywhere on the command line, before
/// the real parse, so file values can seed the defaults that explicit flags
/// then overwrite (command line wins).
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(std::strlen("--config="));
    }
    return {};
}

void attach_flags(CLI::App* cmd, qtsp::ExperimentConfig& cfg, std::string& config_path,
                  bool is_sweep) {
    cmd->add_option("--config", config_path, "JSON config file (explicit flags override it)");
    cmd->add_option("--n", cfg.n, "city count");
    cmd->add_option("--c1", cfg.c1, "lower cost bound");
    cmd->add_option("--c2", cfg.c2, "upper cost bound");
    cmd->add_option("--seed", cfg.seed, "instance seed");
    cmd->add_option("--M", cfg.M, "half-group count (2M cost-phase groups)");
    cmd->add_option("--quantile", cfg.quantile, "window quantile q (best ceil(q*N) tours)");
    cmd->add_option("--eta", cfg.eta, "window width in radians (overrides --quantile)");
    cmd->add_option("--shots", cfg.shots, "measurement samples");
    cmd->add_option("--max-queries", cfg.max_queries, "classical per-trial query cap");
    cmd->add_option("--trials", cfg.trials, "classical trial count");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--workers", cfg.workers, "worker threads for sweeps (0 = hardware)");
    cmd->add_option(
        "--mode",
        [&cfg](const CLI::results_t& vals) {
            if (vals[0] == "continuous") cfg.mode = qtsp::OracleMode::continuous;
            else if (vals[0] == "discretized") cfg.mode = qtsp::OracleMode::discretized;
            else return false;
            return true;
        },
        "oracle mode: continuous|discretized");
    cmd->add_option(
        "--oracle",
        [&cfg](const CLI::results_t& vals) {
            if (vals[0] == "window") cfg.oracle = qtsp::OracleKind::window;
            else if (vals[0] == "affine") cfg.oracle = qtsp::OracleKind::affine;
            else return false;
            return true;
        },
        "oracle realization: window|affine");
    if (is_sweep) {
        cmd->add_option("--n-list", cfg.n_list, "sweep city counts");
        cmd->add_option("--seeds", cfg.seeds, "sweep instance seeds");
    }
}

} // namespace

int main(int argc, char** argv) {
    qtsp::ExperimentConfig cfg;
    std::string config_path = find_config_path(argc, argv);
    try {
        if (!config_path.empty()) cfg = qtsp::load_config_file(config_path);
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return kExitConfigError;
    }

    CLI::App app{"quantum-vs-classical tour search experiment runner"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "generate a random instance and write instance.txt"},
        {"stats", "cost/phase statistics, group histogram, and validity conditions"},
        {"run-quantum", "run the quantum amplitude-amplification simulation"},
        {"run-classical", "run the classical random-query baseline"},
        {"compare", "quantum vs classical side-by-side on one instance"},
        {"sweep", "grid of compare cells over n and seeds, with an aggregate CSV"}};

    std::string parsed_config_path; // discarded; the pre-scan already loaded it
    std::vector<std::pair<std::string, CLI::App*>> cmds;
    for (const auto& [name, desc] : commands) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        attach_flags(cmd, cfg, parsed_config_path, name == "sweep");
        cmds.emplace_back(name, cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    for (const auto& [name, cmd] : cmds) {
        if (cmd->parsed()) {
            cfg.kind = name;
            break;
        }
    }

    try {
        const qtsp::Report report = qtsp::run_experiment(cfg);
        for (const auto& [key, value] : report.entries()) {
            std::cout << key << '=' << value << '\n';
        }
        return kExitOk;
    } catch (const qtsp::resource_error& err) {
        std::cerr << "resource limit: " << err.what() << '\n';
        return kExitResourceLimit;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfigError;
    }
}
