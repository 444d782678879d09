// Command-line driver for the CTB collocation solver.
//
//   ctb_burgers --problem sine --lambda 1 --n-cells 40 --dt 0.0001 --t-end 3.0
//               --sample-times 0.4,0.6,0.8,1.0,3.0 --sample-xs 0.25,0.5,0.75 --outputs table
//   ctb_burgers reproduce table2

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctb/experiment.hpp"

namespace {

int code(ctb::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubic trigonometric B-spline collocation for the 1D Burgers equation"};
    app.set_help_all_flag("--help-all");

    // Run flags are kept as strings and applied through the same path as the
    // config file, so both reject bad values with the same diagnostics.
    const std::vector<std::string> keys = {"problem", "lambda", "n-cells", "dt",     "t-end", "sample-times",
                                           "sample-xs", "outputs", "output-dir", "alpha", "mu",    "gamma"};
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_options;
    for (const auto& k : keys) {
        flag_options[k] = app.add_option("--" + k, flag_values[k], "run setting '" + k + "'");
    }
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags override its entries");

    auto* repro = app.add_subcommand("reproduce", "rerun a published configuration and compare");
    std::string target_name;
    std::string repro_dir;
    repro->add_option("target", target_name, "table2|table3|table4|table5|fig7|fig8|all")->required();
    repro->add_option("--output-dir", repro_dir, "write <target>.csv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ctb::ExitCode::kConfig);
    }

    if (repro->parsed()) {
        std::vector<ctb::Target> targets;
        if (target_name == "all") {
            targets = {ctb::Target::kTable2, ctb::Target::kTable3, ctb::Target::kTable4,
                       ctb::Target::kTable5, ctb::Target::kFig7,   ctb::Target::kFig8};
        } else if (const auto t = ctb::parse_target(target_name)) {
            targets = {*t};
        } else {
            std::cerr << "config error: target: unknown reproduction target '" << target_name << "'\n";
            return code(ctb::ExitCode::kConfig);
        }
        int worst = 0;
        for (const auto t : targets) {
            worst = std::max(worst, code(ctb::run_reproduction(t, repro_dir, std::cout, std::cerr)));
        }
        return worst;
    }

    try {
        ctb::Settings flags;
        for (const auto& [k, opt] : flag_options) {
            if (opt->count() > 0) flags[k] = flag_values[k];
        }
        ctb::Settings settings = config_path.empty() ? ctb::Settings{} : ctb::load_config_file(config_path);
        settings = ctb::merge_settings(std::move(settings), flags);
        const auto config = ctb::config_from_settings(settings);
        return code(ctb::run(config, std::cout, std::cerr));
    } catch (const ctb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return code(ctb::ExitCode::kConfig);
    }
}
