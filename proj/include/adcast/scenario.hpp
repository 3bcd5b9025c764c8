#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adcast/planner.hpp"

namespace adcast {

enum class Strategy { None, Broadcast, BruteForce, Dp };

const char* strategy_name(Strategy strategy);

// Uniform weights on [0,1] per directed pair with everything below the
// threshold removed, as in the large-scale experiment setup.
struct RandomGraphSpec {
    int agents = 0;
    double threshold = 0.3;
    std::uint64_t seed = 0;
};

// Draws the graph for the given spec. When connectivity is required, the
// seed advances by one on each failed draw, up to max_retries.
SocialGraph generate_graph(const RandomGraphSpec& spec, bool require_connected,
                           int max_retries = 100);

// One experiment: graph source, initial opinions, budget and timing. Flat
// `key = value` text file, `#` comments, lists comma-separated.
struct Scenario {
    std::string graph_file;  // empty when the graph is generated
    std::optional<RandomGraphSpec> random_graph;

    enum class InitKind { Grid, Constant, Explicit };
    InitKind x0_kind = InitKind::Grid;
    double x0_constant = 0.5;
    std::vector<double> x0_values;

    int target = 1;
    double cap = 0.2;
    int units = 0;    // Q
    int horizon = 0;  // M, so campaigns = M + 1
    Regime regime = Regime::Short;
    double delta = 0.0;  // 0 in the long regime
    std::uint64_t seed = 0;
    int trajectory_samples = 40;
};

// Relative graph paths resolve against base_dir.
Scenario parse_scenario(std::istream& in, const std::string& base_dir);
Scenario parse_scenario_file(const std::string& path);

// Fully solved scenario: the chosen strategy's plan plus the two baselines
// that every report carries.
struct Report {
    Strategy strategy = Strategy::None;
    Regime regime = Regime::Short;
    int agents = 0;
    int campaigns = 0;
    std::uint64_t seed = 0;
    AllocationPlan plan;
    std::vector<double> campaign_units;  // per-campaign spend in cap units
    double cost_avg = 0.0;
    double cost_total = 0.0;
    double budget_spent = 0.0;
    double uncontrolled_cost_avg = 0.0;
    double broadcast_cost_avg = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::pair<double, Eigen::VectorXd>> trajectory;
};

// Materializes the graph, plans with the requested strategy, always computes
// the uncontrolled and broadcast baselines, and samples the trajectory of
// the chosen plan.
Report run_scenario(const Scenario& scenario, Strategy strategy,
                    std::uint64_t node_limit = kDefaultNodeLimit);

// Builds the Problem a scenario describes (shared by run_scenario and tests).
Problem problem_from_scenario(const Scenario& scenario);

// trajectory.csv, plan.csv and summary.json under out_dir.
void write_report(const Report& report, const std::string& out_dir);

// t, x_1..x_N rows; campaign instants contribute a pre- and a post-jump row.
std::vector<std::pair<double, Eigen::VectorXd>> sample_trajectory(
    const Problem& problem, const Eigen::MatrixXd& controls, int samples_per_segment);

}  // namespace adcast
