#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adcast/errors.hpp"
#include "adcast/graph_io.hpp"
#include "adcast/scenario.hpp"

namespace {

struct Options {
    std::string scenario_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t node_limit = adcast::kDefaultNodeLimit;
};

adcast::Scenario load_scenario(const Options& options) {
    adcast::Scenario scenario = adcast::parse_scenario_file(options.scenario_path);
    if (options.seed_given) {
        scenario.seed = options.seed;
        if (scenario.random_graph && scenario.random_graph->seed == 0) {
            scenario.random_graph->seed = options.seed;
        }
    }
    return scenario;
}

int run_strategy(const Options& options, adcast::Strategy strategy) {
    const adcast::Scenario scenario = load_scenario(options);
    const adcast::Report report = adcast::run_scenario(scenario, strategy, options.node_limit);
    adcast::write_report(report, options.out_dir);

    std::printf("strategy      %s (%s regime, %d agents, %d campaigns)\n",
                adcast::strategy_name(report.strategy), adcast::regime_name(report.regime),
                report.agents, report.campaigns);
    std::printf("cost_avg      %.6f\n", report.cost_avg);
    std::printf("uncontrolled  %.6f\n", report.uncontrolled_cost_avg);
    std::printf("broadcast     %.6f\n", report.broadcast_cost_avg);
    std::printf("budget_spent  %.6f\n", report.budget_spent);
    std::printf("wall_clock_s  %.3f\n", report.wall_seconds);
    std::printf("wrote trajectory.csv, plan.csv, summary.json to %s\n",
                options.out_dir.c_str());
    return 0;
}

int run_gen_graph(const Options& options) {
    const adcast::Scenario scenario = load_scenario(options);
    if (!scenario.random_graph) {
        throw adcast::ScenarioError("gen-graph needs `graph = random` in the scenario");
    }
    adcast::RandomGraphSpec spec = *scenario.random_graph;
    if (spec.seed == 0) spec.seed = scenario.seed;
    const adcast::SocialGraph graph =
        adcast::generate_graph(spec, scenario.regime != adcast::Regime::Clustered);

    std::filesystem::create_directories(options.out_dir);
    const std::string path = (std::filesystem::path(options.out_dir) / "graph.txt").string();
    adcast::write_graph_file(graph, path);
    std::printf("wrote %d-agent graph to %s\n", graph.size(), path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space-time advertising budget planner for social networks"};
    app.require_subcommand(1);

    Options options;
    const auto add_common = [&options](CLI::App* cmd, bool with_node_limit) {
        cmd->add_option("--scenario", options.scenario_path, "scenario file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", options.out_dir, "output directory (default .)");
        cmd->add_option("--seed", options.seed, "override the scenario seed")
            ->each([&options](const std::string&) { options.seed_given = true; });
        if (with_node_limit) {
            cmd->add_option("--node-limit", options.node_limit,
                            "largest brute-force search space accepted");
        }
    };

    add_common(app.add_subcommand("simulate", "uncontrolled dynamics plus baselines"), false);
    add_common(app.add_subcommand("plan-brute", "exhaustive time-allocation search"), true);
    add_common(app.add_subcommand("plan-dp", "dynamic program, long regime only"), false);
    add_common(app.add_subcommand("baselines", "broadcast strategy plus baselines"), false);
    add_common(app.add_subcommand("gen-graph", "draw the scenario's random graph"), false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("simulate")) return run_strategy(options, adcast::Strategy::None);
        if (app.got_subcommand("plan-brute")) {
            return run_strategy(options, adcast::Strategy::BruteForce);
        }
        if (app.got_subcommand("plan-dp")) return run_strategy(options, adcast::Strategy::Dp);
        if (app.got_subcommand("baselines")) {
            return run_strategy(options, adcast::Strategy::Broadcast);
        }
        if (app.got_subcommand("gen-graph")) return run_gen_graph(options);
    } catch (const adcast::ScenarioError& error) {
        std::cerr << "invalid scenario: " << error.what() << "\n";
        return 2;
    } catch (const adcast::SearchSpaceTooLargeError& error) {
        std::cerr << error.what() << "\n";
        return 3;
    } catch (const adcast::GenerationFailedError& error) {
        std::cerr << error.what() << "\n";
        return 3;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 1;
}
