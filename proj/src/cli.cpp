#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavsec/experiments.hpp"

namespace uavsec {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Secrecy-rate planner for an AN-aided UAV downlink"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> scheme_names;
    long long seed = 0; // reserved for future randomized features

    auto add_common = [&](CLI::App* cmd, bool with_schemes) {
        cmd->add_option("--config", config_path, "JSON configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides the config)");
        if (with_schemes)
            cmd->add_option("--scheme", scheme_names,
                            "scheme to run; repeat for several (overrides the config)");
        cmd->add_option("--seed", seed, "reserved");
    };

    std::pair<const char*, ExperimentKind> kinds[] = {
        {"solve", ExperimentKind::Solve},
        {"trace", ExperimentKind::Trace},
        {"sweep-t", ExperimentKind::SweepTime},
        {"sweep-p", ExperimentKind::SweepPower},
    };
    for (auto& [name, kind] : kinds) {
        (void)kind;
        add_common(app.add_subcommand(name), true);
    }
    add_common(app.add_subcommand("baseline", "emit the reference trajectory only"),
               false);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help() << '\n';
        return 1;
    }

    try {
        LoadedConfig loaded = load_config(slurp(config_path));
        if (!out_dir.empty()) loaded.experiment.output_dir = out_dir;
        if (!scheme_names.empty()) {
            loaded.experiment.schemes.clear();
            for (const auto& name : scheme_names) {
                const auto s = scheme_from_name(name);
                if (!s) throw ConfigError("unknown scheme '" + name + "'");
                loaded.experiment.schemes.push_back(*s);
            }
        }

        std::vector<std::filesystem::path> written;
        if (app.get_subcommand("baseline")->parsed()) {
            written.push_back(
                write_baseline_csv(loaded.scenario, loaded.experiment.output_dir));
        } else {
            for (auto& [name, kind] : kinds)
                if (app.get_subcommand(name)->parsed()) loaded.experiment.kind = kind;
            try {
                written = run_experiment(loaded.experiment, loaded.scenario);
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                std::cerr << "solver error: " << e.what() << '\n';
                return 2;
            }
        }
        for (const auto& path : written) std::cout << "wrote " << path.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace uavsec
