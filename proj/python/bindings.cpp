#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adcast/allocation.hpp"
#include "adcast/dynamics.hpp"
#include "adcast/errors.hpp"
#include "adcast/graph.hpp"
#include "adcast/graph_io.hpp"
#include "adcast/planner.hpp"
#include "adcast/scenario.hpp"

namespace py = pybind11;
using namespace adcast;

PYBIND11_MODULE(adcast, m) {
    m.doc() = "space-time advertising budget allocation over opinion dynamics";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<SearchSpaceTooLargeError>(m, "SearchSpaceTooLargeError",
                                                     PyExc_RuntimeError);
    py::register_exception<GenerationFailedError>(m, "GenerationFailedError", PyExc_RuntimeError);
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    py::enum_<Regime>(m, "Regime")
        .value("Short", Regime::Short)
        .value("Long", Regime::Long)
        .value("Clustered", Regime::Clustered);

    py::enum_<Strategy>(m, "Strategy")
        .value("Nothing", Strategy::None)
        .value("Broadcast", Strategy::Broadcast)
        .value("BruteForce", Strategy::BruteForce)
        .value("Dp", Strategy::Dp);

    py::class_<SocialGraph>(m, "SocialGraph")
        .def(py::init(&SocialGraph::from_weights), py::arg("weights"))
        .def_readonly("weights", &SocialGraph::weights)
        .def_property_readonly("agents", &SocialGraph::size);

    py::class_<Laplacian>(m, "Laplacian").def_readonly("matrix", &Laplacian::matrix);

    py::class_<ClusterPartition>(m, "ClusterPartition")
        .def_readonly("clusters", &ClusterPartition::clusters)
        .def_property_readonly("connected", &ClusterPartition::connected)
        .def("membership", &ClusterPartition::membership);

    py::class_<CentralityVector>(m, "CentralityVector")
        .def_readonly("values", &CentralityVector::values);

    py::class_<OpinionState>(m, "OpinionState")
        .def(py::init([](Eigen::VectorXd opinions, double time) {
                 return OpinionState{std::move(opinions), time};
             }),
             py::arg("opinions"), py::arg("time") = 0.0)
        .def_readonly("opinions", &OpinionState::opinions)
        .def_readonly("time", &OpinionState::time);

    py::class_<BudgetConfig>(m, "BudgetConfig")
        .def_static("discrete", &BudgetConfig::discrete, py::arg("units"), py::arg("cap"),
                    py::arg("target"), py::arg("campaigns"))
        .def_readonly("total_budget", &BudgetConfig::total_budget)
        .def_readonly("cap", &BudgetConfig::cap)
        .def_readonly("units", &BudgetConfig::units)
        .def_readonly("target", &BudgetConfig::target)
        .def_readonly("campaigns", &BudgetConfig::campaigns);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init([](Regime regime, int campaigns, double delta) {
                 return Schedule{regime, campaigns, delta};
             }),
             py::arg("regime"), py::arg("campaigns"), py::arg("delta") = 0.0)
        .def_readonly("regime", &Schedule::regime)
        .def_readonly("campaigns", &Schedule::campaigns)
        .def_readonly("delta", &Schedule::delta);

    py::class_<InfluenceScores>(m, "InfluenceScores")
        .def(py::init([](Eigen::VectorXd scores, Regime regime) {
                 return InfluenceScores{std::move(scores), regime};
             }),
             py::arg("scores"), py::arg("regime") = Regime::Short)
        .def_readonly("scores", &InfluenceScores::scores)
        .def_readonly("regime", &InfluenceScores::regime);

    py::class_<CampaignAllocation>(m, "CampaignAllocation")
        .def_readonly("controls", &CampaignAllocation::controls)
        .def_readonly("budget", &CampaignAllocation::budget)
        .def_readonly("surplus", &CampaignAllocation::surplus)
        .def("spent", &CampaignAllocation::spent);

    py::class_<TimeAllocation>(m, "TimeAllocation")
        .def(py::init([](std::vector<int> units) { return TimeAllocation{std::move(units)}; }),
             py::arg("units"))
        .def_readonly("units", &TimeAllocation::units)
        .def("total", &TimeAllocation::total);

    py::class_<AllocationPlan>(m, "AllocationPlan")
        .def_readonly("controls", &AllocationPlan::controls)
        .def_readonly("time_allocation", &AllocationPlan::time_allocation)
        .def_readonly("cost_total", &AllocationPlan::cost_total)
        .def_readonly("cost_avg", &AllocationPlan::cost_avg)
        .def_readonly("budget_spent", &AllocationPlan::budget_spent)
        .def_readonly("regime", &AllocationPlan::regime);

    py::class_<CostTrace>(m, "CostTrace")
        .def_readonly("controls", &CostTrace::controls)
        .def_readonly("campaign_budgets", &CostTrace::campaign_budgets)
        .def_readonly("final_consensus", &CostTrace::final_consensus)
        .def_readonly("cost_total", &CostTrace::cost_total)
        .def_readonly("cost_avg", &CostTrace::cost_avg)
        .def_readonly("budget_spent", &CostTrace::budget_spent);

    py::class_<Problem>(m, "Problem")
        .def_static("build", &Problem::build, py::arg("graph"), py::arg("initial_opinions"),
                    py::arg("schedule"), py::arg("budget"))
        .def_readonly("laplacian", &Problem::laplacian)
        .def_readonly("partition", &Problem::partition)
        .def_readonly("centrality", &Problem::centrality)
        .def_readonly("initial_opinions", &Problem::initial_opinions)
        .def_property_readonly("agents", &Problem::agents)
        .def_property_readonly("campaigns", &Problem::campaigns);

    py::class_<ValueTable>(m, "ValueTable")
        .def_readonly("values", &ValueTable::values)
        .def_readonly("argmin", &ValueTable::argmin)
        .def_readonly("first_campaign_factor", &ValueTable::first_campaign_factor)
        .def_readonly("consensus_factor", &ValueTable::consensus_factor);

    py::class_<DpResult>(m, "DpResult")
        .def_readonly("table", &DpResult::table)
        .def_readonly("plan", &DpResult::plan)
        .def_readonly("degenerate_first_campaign", &DpResult::degenerate_first_campaign);

    py::class_<RandomGraphSpec>(m, "RandomGraphSpec")
        .def(py::init([](int agents, double threshold, std::uint64_t seed) {
                 return RandomGraphSpec{agents, threshold, seed};
             }),
             py::arg("agents"), py::arg("threshold") = 0.3, py::arg("seed") = 0)
        .def_readonly("agents", &RandomGraphSpec::agents)
        .def_readonly("threshold", &RandomGraphSpec::threshold)
        .def_readonly("seed", &RandomGraphSpec::seed);

    py::class_<Report>(m, "Report")
        .def_readonly("strategy", &Report::strategy)
        .def_readonly("regime", &Report::regime)
        .def_readonly("agents", &Report::agents)
        .def_readonly("campaigns", &Report::campaigns)
        .def_readonly("plan", &Report::plan)
        .def_readonly("campaign_units", &Report::campaign_units)
        .def_readonly("cost_avg", &Report::cost_avg)
        .def_readonly("cost_total", &Report::cost_total)
        .def_readonly("uncontrolled_cost_avg", &Report::uncontrolled_cost_avg)
        .def_readonly("broadcast_cost_avg", &Report::broadcast_cost_avg)
        .def_readonly("wall_seconds", &Report::wall_seconds);

    m.def("build_laplacian", &build_laplacian, py::arg("graph"));
    m.def("detect_clusters", &detect_clusters, py::arg("graph"));
    m.def("centrality", &centrality, py::arg("laplacian"), py::arg("partition"));
    m.def("mixing_time", &mixing_time, py::arg("laplacian"));
    m.def("matrix_exponential", &matrix_exponential, py::arg("a"));
    m.def("propagate", &propagate, py::arg("state"), py::arg("laplacian"), py::arg("delta"));
    m.def(
        "apply_campaign",
        [](const OpinionState& state, Eigen::VectorXd controls, double cap, int target) {
            return apply_campaign(state, ControlAction{std::move(controls), cap}, target);
        },
        py::arg("state"), py::arg("controls"), py::arg("cap"), py::arg("target"));
    m.def("consensus_limit", &consensus_limit, py::arg("state"), py::arg("partition"),
          py::arg("centrality"));
    m.def("cost_infinity", &cost_infinity, py::arg("consensus_values"), py::arg("partition"),
          py::arg("target"));
    m.def("cost_finite", &cost_finite, py::arg("state"), py::arg("target"));

    m.def("score_order", &score_order, py::arg("scores"));
    m.def("water_fill", &water_fill, py::arg("scores"), py::arg("budget"), py::arg("cap"));
    m.def("per_campaign_scores", &per_campaign_scores, py::arg("pre_jump"), py::arg("centrality"),
          py::arg("target"));
    m.def("long_campaign_scores", &long_campaign_scores, py::arg("pre_jump"),
          py::arg("centrality"), py::arg("target"), py::arg("campaign_index"));
    m.def("cluster_scores", &cluster_scores, py::arg("pre_jump"), py::arg("partition"),
          py::arg("centrality"), py::arg("target"));
    m.def("broadcast_schedule", &broadcast_schedule, py::arg("config"), py::arg("agents"),
          py::arg("campaigns"));

    m.def(
        "evaluate_plan",
        [](const Problem& problem, const TimeAllocation& allocation) {
            return evaluate_plan(problem, allocation);
        },
        py::arg("problem"), py::arg("allocation"));
    m.def(
        "evaluate_controls",
        [](const Problem& problem, const Eigen::MatrixXd& controls) {
            return evaluate_plan(problem, controls);
        },
        py::arg("problem"), py::arg("controls"));
    m.def("brute_force_plan", &brute_force_plan, py::arg("problem"),
          py::arg("node_limit") = kDefaultNodeLimit);
    m.def("dp_plan", &dp_plan, py::arg("problem"));

    m.def("generate_graph", &generate_graph, py::arg("spec"), py::arg("require_connected"),
          py::arg("max_retries") = 100);
    m.def("read_graph_file", &read_graph_file, py::arg("path"));
    m.def("write_graph_file", &write_graph_file, py::arg("graph"), py::arg("path"));
    m.def("parse_scenario_file", &parse_scenario_file, py::arg("path"));
    m.def("run_scenario", &run_scenario, py::arg("scenario"), py::arg("strategy"),
          py::arg("node_limit") = kDefaultNodeLimit);
    m.def("write_report", &write_report, py::arg("report"), py::arg("out_dir"));

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("target", &Scenario::target)
        .def_readonly("cap", &Scenario::cap)
        .def_readonly("units", &Scenario::units)
        .def_readonly("horizon", &Scenario::horizon)
        .def_readonly("regime", &Scenario::regime)
        .def_readonly("delta", &Scenario::delta)
        .def_readwrite("seed", &Scenario::seed);
}
