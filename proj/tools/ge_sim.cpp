// ge-sim: simulation front end. Modes mirror the library surface; every run is
// a pure function of its JSON config and writes deterministic CSV/JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "gesim/acceptance.hpp"
#include "gesim/config.hpp"
#include "gesim/errors.hpp"

namespace {

int run_validate() {
    const auto results = gesim::acceptance::run_all();
    const int failures = gesim::acceptance::report(results, std::cout);
    if (failures > 0) {
        std::cout << failures << " criterion(s) failing\n";
        return 4;
    }
    std::cout << "all criteria passing\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gravity-induced-entanglement simulation suite"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir = "out", preset_name;

    const std::vector<std::string> modes = {"eigen",      "pex",    "visibility",
                                            "negativity", "sn",     "optomech",
                                            "oracle",     "feasibility", "validate"};
    for (const auto& mode : modes) {
        auto* sub = app.add_subcommand(mode, "run the '" + mode + "' mode");
        if (mode != "validate") {
            sub->add_option("--config", config_path, "JSON config file");
            sub->add_option("--preset", preset_name, "embedded preset (fig2, fig5, eq24)");
        }
        sub->add_option("--out", out_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return 2;
    }
    const std::string mode = app.get_subcommands().front()->get_name();

    try {
        if (mode == "validate") return run_validate();

        std::vector<std::pair<std::string, gesim::RunConfig>> runs;
        if (!preset_name.empty()) {
            runs = gesim::preset(preset_name);
        } else if (!config_path.empty()) {
            auto cfg = gesim::load_config_file(config_path);
            if (cfg.mode != mode)
                throw gesim::ConfigError("config mode '" + cfg.mode +
                                         "' does not match subcommand '" + mode + "'");
            runs.emplace_back(mode, std::move(cfg));
        } else {
            throw gesim::ConfigError("need --config or --preset");
        }
        for (auto& [stem, cfg] : runs) {
            const std::string prefix = preset_name.empty() ? "" : stem;
            for (const auto& path : gesim::run_to_files(cfg, out_dir, prefix))
                std::cout << "wrote " << path << "\n";
        }
        return 0;
    } catch (const gesim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gesim::PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
