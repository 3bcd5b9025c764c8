#include "adcast/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adcast/errors.hpp"
#include "adcast/graph_io.hpp"
#include "adcast/rng.hpp"

namespace adcast {

namespace {

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char separator) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, separator)) parts.push_back(trimmed(part));
    return parts;
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ScenarioError("scenario key `" + key + "` has a malformed number: " + text);
    }
}

long long parse_integer(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ScenarioError("scenario key `" + key + "` has a malformed integer: " + text);
    }
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

}  // namespace

const char* strategy_name(Strategy strategy) {
    switch (strategy) {
        case Strategy::None: return "none";
        case Strategy::Broadcast: return "broadcast";
        case Strategy::BruteForce: return "brute-force";
        case Strategy::Dp: return "dp";
    }
    return "unknown";
}

SocialGraph generate_graph(const RandomGraphSpec& spec, bool require_connected, int max_retries) {
    if (spec.agents < 1) throw ScenarioError("random graph needs at least one agent");
    if (!(spec.threshold >= 0.0 && spec.threshold < 1.0)) {
        throw ScenarioError("random graph threshold must lie in [0, 1)");
    }
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        Xoshiro256 rng(spec.seed + static_cast<std::uint64_t>(attempt));
        Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(spec.agents, spec.agents);
        for (int i = 0; i < spec.agents; ++i) {
            for (int j = 0; j < spec.agents; ++j) {
                if (i == j) continue;
                const double draw = rng.uniform();
                weights(i, j) = draw < spec.threshold ? 0.0 : draw;
            }
        }
        SocialGraph graph = SocialGraph::from_weights(std::move(weights));
        if (!require_connected) return graph;
        try {
            if (detect_clusters(graph).connected()) return graph;
        } catch (const NoSpanningTreeError&) {
            // support-connected but rootless; redraw
        }
    }
    throw GenerationFailedError("no weakly connected graph found for seed " +
                                std::to_string(spec.seed) + " after " +
                                std::to_string(max_retries) + " retries");
}

Scenario parse_scenario(std::istream& in, const std::string& base_dir) {
    Scenario scenario;
    bool saw_graph = false;
    bool saw_delta = false;
    bool delta_long = false;
    bool saw_units = false;
    bool saw_horizon = false;
    std::string line;
    int line_number = 0;

    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = trimmed(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError("scenario line " + std::to_string(line_number) +
                                " is not `key = value`");
        }
        const std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        if (value.empty()) throw ScenarioError("scenario key `" + key + "` has no value");

        if (key == "graph") {
            saw_graph = true;
            if (value == "random") {
                scenario.random_graph = RandomGraphSpec{};
            } else {
                std::filesystem::path path(value);
                if (path.is_relative() && !base_dir.empty()) {
                    path = std::filesystem::path(base_dir) / path;
                }
                scenario.graph_file = path.string();
            }
        } else if (key == "n") {
            if (!scenario.random_graph) scenario.random_graph = RandomGraphSpec{};
            scenario.random_graph->agents = static_cast<int>(parse_integer(value, key));
        } else if (key == "threshold") {
            if (!scenario.random_graph) scenario.random_graph = RandomGraphSpec{};
            scenario.random_graph->threshold = parse_double(value, key);
        } else if (key == "x0") {
            if (value == "grid") {
                scenario.x0_kind = Scenario::InitKind::Grid;
            } else if (value.rfind("const", 0) == 0) {
                scenario.x0_kind = Scenario::InitKind::Constant;
                scenario.x0_constant = parse_double(trimmed(value.substr(5)), key);
            } else {
                scenario.x0_kind = Scenario::InitKind::Explicit;
                scenario.x0_values.clear();
                for (const auto& item : split(value, ',')) {
                    scenario.x0_values.push_back(parse_double(item, key));
                }
            }
        } else if (key == "d") {
            scenario.target = static_cast<int>(parse_integer(value, key));
        } else if (key == "u_max") {
            scenario.cap = parse_double(value, key);
        } else if (key == "q") {
            scenario.units = static_cast<int>(parse_integer(value, key));
            saw_units = true;
        } else if (key == "m") {
            scenario.horizon = static_cast<int>(parse_integer(value, key));
            saw_horizon = true;
        } else if (key == "delta") {
            saw_delta = true;
            if (value == "long") {
                delta_long = true;
            } else {
                scenario.delta = parse_double(value, key);
            }
        } else if (key == "regime") {
            if (value == "short") {
                scenario.regime = Regime::Short;
            } else if (value == "long") {
                scenario.regime = Regime::Long;
            } else if (value == "clustered") {
                scenario.regime = Regime::Clustered;
            } else {
                throw ScenarioError("regime must be short, long or clustered, got " + value);
            }
        } else if (key == "seed") {
            scenario.seed = static_cast<std::uint64_t>(parse_integer(value, key));
        } else if (key == "trajectory_samples") {
            scenario.trajectory_samples = static_cast<int>(parse_integer(value, key));
        } else {
            throw ScenarioError("unknown scenario key `" + key + "`");
        }
    }

    if (!saw_graph) throw ScenarioError("scenario is missing the `graph` key");
    if (!saw_units) throw ScenarioError("scenario is missing the `q` key");
    if (!saw_horizon) throw ScenarioError("scenario is missing the `m` key");
    if (scenario.random_graph && scenario.random_graph->agents < 1) {
        throw ScenarioError("random graphs need `n`");
    }
    if (scenario.target != 0 && scenario.target != 1) {
        throw ScenarioError("target opinion d must be 0 or 1");
    }
    if (!(scenario.cap > 0.0 && scenario.cap < 1.0)) {
        throw ScenarioError("u_max must lie in (0, 1)");
    }
    if (scenario.units < 0) throw ScenarioError("q must be nonnegative");
    if (scenario.horizon < 0) throw ScenarioError("m must be nonnegative");
    if (scenario.trajectory_samples < 1) {
        throw ScenarioError("trajectory_samples must be positive");
    }
    for (double x : scenario.x0_values) {
        if (!(x >= 0.0 && x <= 1.0)) throw ScenarioError("x0 entries must lie in [0, 1]");
    }
    if (!(scenario.x0_constant >= 0.0 && scenario.x0_constant <= 1.0)) {
        throw ScenarioError("x0 constant must lie in [0, 1]");
    }
    if (scenario.regime == Regime::Long) {
        if (saw_delta && !delta_long) {
            throw ScenarioError("the long regime takes `delta = long` or no delta");
        }
        scenario.delta = 0.0;
    } else {
        if (delta_long) throw ScenarioError("`delta = long` requires `regime = long`");
        if (!saw_delta || !(scenario.delta > 0.0)) {
            throw ScenarioError("short and clustered regimes need a positive `delta`");
        }
    }
    return scenario;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    return parse_scenario(in, std::filesystem::path(path).parent_path().string());
}

Problem problem_from_scenario(const Scenario& scenario) {
    SocialGraph graph = [&] {
        if (!scenario.graph_file.empty()) return read_graph_file(scenario.graph_file);
        if (!scenario.random_graph) throw ScenarioError("scenario names no graph source");
        RandomGraphSpec spec = *scenario.random_graph;
        if (spec.seed == 0) spec.seed = scenario.seed;
        return generate_graph(spec, scenario.regime != Regime::Clustered);
    }();

    const int n = graph.size();
    Eigen::VectorXd x0(n);
    switch (scenario.x0_kind) {
        case Scenario::InitKind::Grid:
            for (int i = 0; i < n; ++i) x0(i) = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            break;
        case Scenario::InitKind::Constant:
            x0.setConstant(scenario.x0_constant);
            break;
        case Scenario::InitKind::Explicit:
            if (static_cast<int>(scenario.x0_values.size()) != n) {
                throw ScenarioError("explicit x0 must list one opinion per agent");
            }
            for (int i = 0; i < n; ++i) x0(i) = scenario.x0_values[i];
            break;
    }

    const int campaigns = scenario.horizon + 1;
    const Schedule schedule{scenario.regime, campaigns, scenario.delta};
    const BudgetConfig budget =
        BudgetConfig::discrete(scenario.units, scenario.cap, scenario.target, campaigns);
    try {
        return Problem::build(std::move(graph), std::move(x0), schedule, budget);
    } catch (const NoSpanningTreeError&) {
        throw;
    } catch (const Error& error) {
        throw ScenarioError(error.what());
    }
}

std::vector<std::pair<double, Eigen::VectorXd>> sample_trajectory(
    const Problem& problem, const Eigen::MatrixXd& controls, int samples_per_segment) {
    const Propagator propagator(problem.laplacian);
    const double time_constant = mixing_time(problem.laplacian);
    const double settle_span = std::isfinite(time_constant) ? 10.0 * time_constant : 1.0;
    const double segment = problem.schedule.regime == Regime::Long
                               ? settle_span
                               : problem.schedule.delta;

    std::vector<std::pair<double, Eigen::VectorXd>> rows;
    OpinionState state{problem.initial_opinions, 0.0};
    for (int k = 0; k < problem.campaigns(); ++k) {
        rows.emplace_back(state.time, state.opinions);
        state = apply_campaign(state, ControlAction{controls.row(k).transpose(),
                                                    problem.budget.cap},
                               problem.budget.target);
        rows.emplace_back(state.time, state.opinions);
        const double span = (k + 1 < problem.campaigns()) ? segment : settle_span;
        const double step = span / samples_per_segment;
        for (int s = 0; s < samples_per_segment; ++s) {
            state = propagator.advance(state, step);
            rows.emplace_back(state.time, state.opinions);
        }
    }
    return rows;
}

Report run_scenario(const Scenario& scenario, Strategy strategy, std::uint64_t node_limit) {
    if (strategy == Strategy::Dp && scenario.regime != Regime::Long) {
        throw ScenarioError("the dp strategy requires `regime = long`");
    }
    const Problem problem = problem_from_scenario(scenario);
    const int campaigns = problem.campaigns();

    Report report;
    report.strategy = strategy;
    report.regime = scenario.regime;
    report.agents = problem.agents();
    report.campaigns = campaigns;
    report.seed = scenario.seed;

    // Baselines ship with every report.
    const TimeAllocation idle{std::vector<int>(campaigns, 0)};
    report.uncontrolled_cost_avg = evaluate_plan(problem, idle).cost_avg;

    const std::vector<double> alphas =
        broadcast_schedule(problem.budget, problem.agents(), campaigns);
    Eigen::MatrixXd broadcast_controls(campaigns, problem.agents());
    for (int k = 0; k < campaigns; ++k) {
        broadcast_controls.row(k).setConstant(alphas[k]);
    }
    const CostTrace broadcast_trace = evaluate_plan(problem, broadcast_controls);
    report.broadcast_cost_avg = broadcast_trace.cost_avg;

    const auto pack_units_plan = [&](TimeAllocation units) {
        const CostTrace trace = evaluate_plan(problem, units);
        AllocationPlan plan;
        plan.controls = trace.controls;
        plan.time_allocation = std::move(units);
        plan.cost_total = trace.cost_total;
        plan.cost_avg = trace.cost_avg;
        plan.budget_spent = trace.budget_spent;
        plan.regime = scenario.regime;
        return plan;
    };

    const auto started = std::chrono::steady_clock::now();
    switch (strategy) {
        case Strategy::None:
            report.plan = pack_units_plan(idle);
            break;
        case Strategy::Broadcast: {
            AllocationPlan plan;
            plan.controls = broadcast_controls;
            plan.time_allocation.units.assign(campaigns, 0);
            plan.cost_total = broadcast_trace.cost_total;
            plan.cost_avg = broadcast_trace.cost_avg;
            plan.budget_spent = broadcast_trace.budget_spent;
            plan.regime = scenario.regime;
            report.plan = std::move(plan);
            break;
        }
        case Strategy::BruteForce:
            report.plan = brute_force_plan(problem, node_limit);
            break;
        case Strategy::Dp:
            report.plan = dp_plan(problem).plan;
            break;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    report.campaign_units.assign(campaigns, 0.0);
    if (strategy == Strategy::Broadcast) {
        for (int k = 0; k < campaigns; ++k) {
            report.campaign_units[k] = alphas[k] * problem.agents() / problem.budget.cap;
        }
    } else {
        for (int k = 0; k < campaigns; ++k) {
            report.campaign_units[k] = report.plan.time_allocation.units.empty()
                                           ? 0.0
                                           : report.plan.time_allocation.units[k];
        }
    }
    report.cost_avg = report.plan.cost_avg;
    report.cost_total = report.plan.cost_total;
    report.budget_spent = report.plan.budget_spent;
    report.trajectory =
        sample_trajectory(problem, report.plan.controls, scenario.trajectory_samples);
    return report;
}

void write_report(const Report& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base(out_dir);

    {
        std::ofstream out(base / "trajectory.csv");
        if (!out) throw Error("cannot write trajectory.csv under " + out_dir);
        out << "t";
        for (int i = 1; i <= report.agents; ++i) out << ",x_" << i;
        out << "\n";
        for (const auto& [t, opinions] : report.trajectory) {
            out << format_double(t);
            for (Eigen::Index i = 0; i < opinions.size(); ++i) {
                out << "," << format_double(opinions(i));
            }
            out << "\n";
        }
    }

    {
        std::ofstream out(base / "plan.csv");
        if (!out) throw Error("cannot write plan.csv under " + out_dir);
        out << "campaign,agent,u\n";
        for (Eigen::Index k = 0; k < report.plan.controls.rows(); ++k) {
            for (Eigen::Index i = 0; i < report.plan.controls.cols(); ++i) {
                const double u = report.plan.controls(k, i);
                if (u == 0.0) continue;
                out << k << "," << (i + 1) << "," << format_double(u) << "\n";
            }
        }
    }

    {
        nlohmann::json summary;
        summary["strategy"] = strategy_name(report.strategy);
        summary["regime"] = regime_name(report.regime);
        summary["agents"] = report.agents;
        summary["campaigns"] = report.campaigns;
        summary["seed"] = report.seed;
        summary["cost_avg"] = report.cost_avg;
        summary["cost_total"] = report.cost_total;
        summary["b_vector"] = report.campaign_units;
        summary["budget_spent"] = report.budget_spent;
        summary["baselines"] = {{"uncontrolled_cost_avg", report.uncontrolled_cost_avg},
                                {"broadcast_cost_avg", report.broadcast_cost_avg}};
        summary["wall_clock_s"] = report.wall_seconds;
        std::ofstream out(base / "summary.json");
        if (!out) throw Error("cannot write summary.json under " + out_dir);
        out << summary.dump(2) << "\n";
    }
}

}  // namespace adcast
