#pragma once

#include <Eigen/Dense>
#include <vector>

#include "adcast/dynamics.hpp"
#include "adcast/graph.hpp"

namespace adcast {

// Which influence-power formula governs the campaign ordering.
//   Short:     v_i |d - x_i| per campaign on a connected network
//   Long:      same at campaign 0, then centrality alone
//   Clustered: N_i v^i_j |d - x_j| with the cluster size folded in
enum class Regime { Short, Long, Clustered };

const char* regime_name(Regime regime);

// Per-agent priority scores for one campaign. water_fill only reads the
// order; the regime tag travels along for reporting.
struct InfluenceScores {
    Eigen::VectorXd scores;
    Regime regime = Regime::Short;
};

// One campaign's water-filling result. At most one component sits strictly
// between 0 and the cap; surplus is the part of the requested budget the
// saturated network could not absorb.
struct CampaignAllocation {
    Eigen::VectorXd controls;
    double budget = 0.0;
    double surplus = 0.0;

    double spent() const { return budget - surplus; }
};

// Agents by descending score, ties broken by ascending index.
std::vector<int> score_order(const Eigen::VectorXd& scores);

// Saturate agents at the cap in score order until the budget runs out; the
// next agent takes the fractional remainder.
CampaignAllocation water_fill(const InfluenceScores& scores, double budget, double cap);

// Influence power v_i |d - x_i(tk-)| on a connected network.
InfluenceScores per_campaign_scores(const OpinionState& pre_jump,
                                    const CentralityVector& centrality, int target);

// Campaign 0 matches per_campaign_scores; afterwards opinions are at
// consensus so only centralities order the agents.
InfluenceScores long_campaign_scores(const OpinionState& pre_jump,
                                     const CentralityVector& centrality, int target,
                                     int campaign_index);

// N_i v^i_j |d - x_j(tk-)| for agent j in cluster i.
InfluenceScores cluster_scores(const OpinionState& pre_jump, const ClusterPartition& partition,
                               const CentralityVector& centrality, int target);

// Per-campaign uniform spend alpha_k minimizing the broadcast cost: the
// maximum possible investment as early as possible. Campaign k spends
// agents * alpha_k of the total budget.
std::vector<double> broadcast_schedule(const BudgetConfig& config, int agents, int campaigns);

}  // namespace adcast
