// Command line front end: one subcommand per experiment, config-driven.
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 optimizer stagnation (soft unless --strict).

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rezqu/errors.hpp"
#include "rezqu/workbench.hpp"

namespace wb = rezqu::workbench;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    long long seed = -1;
    int workers = -1;
    bool reproducible = false;
    bool strict = false;
};

int run(const std::string& experiment, const CliOptions& opt) {
    wb::ExperimentConfig cfg;
    try {
        cfg = wb::load_config(opt.config_path);
        if (cfg.experiment != experiment)
            throw rezqu::ConfigError("config experiment '" + cfg.experiment +
                                     "' does not match subcommand '" + experiment + "'");
        if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
        if (!opt.format.empty())
            cfg.format = opt.format == "json" ? wb::OutputFormat::Json
                                              : wb::OutputFormat::Csv;
        if (opt.seed >= 0) cfg.seed = static_cast<unsigned long long>(opt.seed);
        if (opt.workers >= 0) cfg.workers = opt.workers;
    } catch (const rezqu::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    wb::SweepResult result;
    try {
        result = wb::run_experiment(cfg);
    } catch (const rezqu::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }

    const std::string text = cfg.format == wb::OutputFormat::Json
                                 ? wb::to_json_text(result, opt.reproducible)
                                 : wb::to_csv(result, opt.reproducible);
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
            return 2;
        }
        out << text;
    }

    if (result.stagnation_warning) {
        std::cerr << "warning: optimizer stagnated above target; "
                     "best-found result written\n";
        return opt.strict ? 3 : 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memory-qubit-bus device simulator workbench"};
    app.require_subcommand(1);

    CliOptions opt;
    for (const auto& name : wb::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opt.config_path, "experiment config (JSON)")
            ->required();
        sub->add_option("--out", opt.out_path, "output path ('-' for stdout)");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", opt.seed, "optimizer seed override");
        sub->add_option("--workers", opt.workers, "worker threads (0 = cores)");
        sub->add_flag("--reproducible", opt.reproducible,
                      "suppress timestamp metadata for byte-identical output");
        sub->add_flag("--strict", opt.strict,
                      "treat optimizer stagnation as a hard failure");
        sub->callback([name, &opt] { std::exit(run(name, opt)); });
    }

    CLI11_PARSE(app, argc, argv);
    return 0;
}
