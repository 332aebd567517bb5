#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "alkit/config.hpp"
#include "alkit/curves.hpp"
#include "alkit/dataset.hpp"
#include "alkit/experiment.hpp"
#include "alkit/state_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

alkit::Dataset load_for(const alkit::ExperimentConfig& config) {
    alkit::CsvOptions options;
    options.label_column = config.dataset.label_column;
    options.has_header = config.dataset.has_header;
    if (config.dataset.name_column >= 0) options.name_column = config.dataset.name_column;
    return alkit::load_dataset(config.dataset.path, options);
}

void print_report(const alkit::ExperimentReport& report) {
    for (const alkit::FoldResult& fold : report.folds) {
        const alkit::QueryState& last = fold.trace.back();
        std::cout << "fold " << fold.fold << ": " << last.round << " query rounds, cost "
                  << fold.total_cost;
        for (const auto& [metric, value] : last.performance)
            std::cout << ", " << metric << " " << value;
        if (fold.resumed) std::cout << " (resumed)";
        std::cout << '\n';
    }
    for (const std::string& path : report.state_files) std::cout << "state: " << path << '\n';
    for (const std::string& path : report.aggregate_files)
        std::cout << "aggregate: " << path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pool-based active-learning experiment runner"};
    app.require_subcommand(1);

    std::string run_config;
    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("--config", run_config, "config file (JSON)")->required();

    std::string resume_config;
    CLI::App* resume =
        app.add_subcommand("resume", "continue an experiment from its state files");
    resume->add_option("--config", resume_config, "config file (JSON)")->required();

    std::string split_config;
    CLI::App* split = app.add_subcommand("split", "write the splits the config describes");
    split->add_option("--config", split_config, "config file (JSON)")->required();

    std::vector<std::string> analyse_inputs;
    std::string analyse_out;
    std::string analyse_axis = "round";
    int analyse_grid = 50;
    CLI::App* analyse =
        app.add_subcommand("analyse", "re-aggregate existing state files into curves");
    analyse->add_option("--inputs", analyse_inputs, "state files (globs allowed)")->required();
    analyse->add_option("--out", analyse_out, "output directory")->required();
    analyse->add_option("--x", analyse_axis, "curve x axis")
        ->check(CLI::IsMember({"round", "cost"}));
    analyse->add_option("--grid", analyse_grid, "grid size for the cost axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed() || resume->parsed()) {
            const bool resuming = resume->parsed();
            const alkit::ExperimentConfig config =
                alkit::load_config(resuming ? resume_config : run_config);
            const alkit::ExperimentReport report = alkit::run_experiment(config, resuming);
            print_report(report);
        } else if (split->parsed()) {
            const alkit::ExperimentConfig config = alkit::load_config(split_config);
            const alkit::Dataset dataset = load_for(config);
            alkit::validate_against_dataset(config, dataset);
            const std::vector<alkit::Split> splits = alkit::make_splits(config, dataset);
            std::cout << "splits: " << alkit::write_splits(config, dataset, splits) << '\n';
        } else if (analyse->parsed()) {
            alkit::AnalyseOptions options;
            for (const std::string& input : analyse_inputs)
                for (std::string& path : alkit::expand_glob(input))
                    options.inputs.push_back(std::move(path));
            options.out_dir = analyse_out;
            options.axis =
                analyse_axis == "cost" ? alkit::CurveAxis::cost : alkit::CurveAxis::round;
            options.grid_size = analyse_grid;
            for (const std::string& path : alkit::analyse_state_files(options))
                std::cout << "aggregate: " << path << '\n';
        }
        return kExitOk;
    } catch (const alkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const alkit::DigestMismatch& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
