#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "adcast/allocation.hpp"
#include "adcast/dynamics.hpp"
#include "adcast/graph.hpp"

namespace adcast {

// Campaign timing: how many campaigns and how opinions travel between them.
// Short and Clustered flow for a fixed delta; Long lets every cluster reach
// consensus before the next campaign.
struct Schedule {
    Regime regime = Regime::Short;
    int campaigns = 1;   // M + 1
    double delta = 0.0;  // inter-campaign gap, ignored in the Long regime
};

// Fully prepared planning instance, immutable once built.
struct Problem {
    SocialGraph graph;
    Laplacian laplacian;
    ClusterPartition partition;
    CentralityVector centrality;
    Eigen::VectorXd initial_opinions;
    Schedule schedule;
    BudgetConfig budget;

    int agents() const { return graph.size(); }
    int campaigns() const { return schedule.campaigns; }
    // largest useful per-campaign spend in units: min(N, Q)
    int unit_cap() const { return std::min(agents(), budget.units); }

    static Problem build(SocialGraph graph, Eigen::VectorXd initial_opinions, Schedule schedule,
                         BudgetConfig budget);
};

// Discrete campaign budgets b_k, each unit worth cap of spend on one agent.
struct TimeAllocation {
    std::vector<int> units;

    int total() const;
};

struct AllocationPlan {
    Eigen::MatrixXd controls;  // campaigns x agents
    TimeAllocation time_allocation;
    double cost_total = 0.0;
    double cost_avg = 0.0;
    double budget_spent = 0.0;
    Regime regime = Regime::Short;
};

// Everything one simulated plan produces.
struct CostTrace {
    Eigen::MatrixXd controls;
    std::vector<OpinionState> pre_jump;
    std::vector<OpinionState> post_jump;
    std::vector<double> campaign_budgets;
    Eigen::VectorXd final_consensus;  // per cluster
    double cost_total = 0.0;
    double cost_avg = 0.0;
    double budget_spent = 0.0;
};

// Shared simulation machinery for the planners: campaign scores per regime,
// inter-campaign transport, and the exact infinite-horizon cost.
class Evaluator {
  public:
    explicit Evaluator(const Problem& problem);

    InfluenceScores scores_at(const OpinionState& pre_jump, int campaign) const;
    OpinionState between_campaigns(const OpinionState& post_jump) const;
    Eigen::VectorXd consensus_of(const OpinionState& state) const;
    double cost_of(const Eigen::VectorXd& consensus) const;

    CostTrace run(const TimeAllocation& allocation) const;
    CostTrace run(const Eigen::MatrixXd& controls) const;

    const Problem& problem() const { return problem_; }

  private:
    const Problem& problem_;
    Propagator propagator_;
};

// Simulate one plan: water-filled from campaign budgets, or an explicit
// control matrix. The cost is the exact infinite-time deviation after the
// last campaign.
CostTrace evaluate_plan(const Problem& problem, const TimeAllocation& allocation);
CostTrace evaluate_plan(const Problem& problem, const Eigen::MatrixXd& controls);

inline constexpr std::uint64_t kDefaultNodeLimit = 100'000'000;

// Exhaustive search over time allocations with budget pruning, spatial
// allocation per the problem regime. Cost ties resolve to the
// lexicographically smallest b.
AllocationPlan brute_force_plan(const Problem& problem,
                                std::uint64_t node_limit = kDefaultNodeLimit);

// V(k, r): best achievable log cost factor from campaign k on with r units
// left; argmin(k, r) the matching smallest optimal spend.
struct ValueTable {
    Eigen::MatrixXd values;   // (M+1) x (Q+1)
    Eigen::MatrixXi argmin;   // (M+1) x (Q+1)
    std::vector<double> first_campaign_factor;  // f0 over b in 0..min(N, Q)
    std::vector<double> consensus_factor;       // f  over b in 0..min(N, Q)
};

struct DpResult {
    ValueTable table;
    AllocationPlan plan;
    // Some first-campaign spend already drives the cost to zero, so the log
    // recursion is skipped and that spend is returned directly.
    bool degenerate_first_campaign = false;
};

// Scalar-state dynamic program for the long-campaign regime on a connected
// network; matches brute force exactly at polynomial cost.
DpResult dp_plan(const Problem& problem);

}  // namespace adcast
