#include "adcast/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adcast/errors.hpp"

namespace adcast {

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::Short: return "short";
        case Regime::Long: return "long";
        case Regime::Clustered: return "clustered";
    }
    return "unknown";
}

std::vector<int> score_order(const Eigen::VectorXd& scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&scores](int a, int b) { return scores(a) > scores(b); });
    return order;
}

CampaignAllocation water_fill(const InfluenceScores& scores, double budget, double cap) {
    if (!(cap > 0.0 && cap < 1.0)) throw Error("control cap must lie in (0, 1)");
    if (!(budget >= 0.0) || !std::isfinite(budget)) throw Error("campaign budget must be >= 0");
    for (Eigen::Index i = 0; i < scores.scores.size(); ++i) {
        const double s = scores.scores(i);
        if (!std::isfinite(s) || s < 0.0) throw Error("scores must be finite and nonnegative");
    }

    const int n = static_cast<int>(scores.scores.size());
    CampaignAllocation allocation;
    allocation.controls = Eigen::VectorXd::Zero(n);
    allocation.budget = budget;

    const double capacity = n * cap;
    if (budget >= capacity) {
        allocation.controls.setConstant(cap);
        allocation.surplus = budget - capacity;
        return allocation;
    }

    const auto order = score_order(scores.scores);
    const int saturated = static_cast<int>(std::floor(budget / cap + 1e-12));
    double remaining = budget;
    for (int rank = 0; rank < saturated && rank < n; ++rank) {
        allocation.controls(order[rank]) = cap;
        remaining -= cap;
    }
    // Residue below 1e-12 is float leftover from the saturated spends, not a
    // real fractional allocation.
    if (saturated < n && remaining > 1e-12) {
        allocation.controls(order[saturated]) = std::min(remaining, cap);
    }
    return allocation;
}

InfluenceScores per_campaign_scores(const OpinionState& pre_jump,
                                    const CentralityVector& centrality, int target) {
    InfluenceScores scores;
    scores.regime = Regime::Short;
    scores.scores = centrality.values.cwiseProduct(
        (pre_jump.opinions.array() - static_cast<double>(target)).abs().matrix());
    return scores;
}

InfluenceScores long_campaign_scores(const OpinionState& pre_jump,
                                     const CentralityVector& centrality, int target,
                                     int campaign_index) {
    if (campaign_index < 0) throw Error("campaign index must be nonnegative");
    if (campaign_index == 0) {
        InfluenceScores scores = per_campaign_scores(pre_jump, centrality, target);
        scores.regime = Regime::Long;
        return scores;
    }
    return InfluenceScores{centrality.values, Regime::Long};
}

InfluenceScores cluster_scores(const OpinionState& pre_jump, const ClusterPartition& partition,
                               const CentralityVector& centrality, int target) {
    InfluenceScores scores;
    scores.regime = Regime::Clustered;
    scores.scores = Eigen::VectorXd::Zero(pre_jump.size());
    for (const auto& members : partition.clusters) {
        const double size = static_cast<double>(members.size());
        for (int agent : members) {
            scores.scores(agent) = size * centrality.values(agent) *
                                   std::abs(pre_jump.opinions(agent) - target);
        }
    }
    return scores;
}

std::vector<double> broadcast_schedule(const BudgetConfig& config, int agents, int campaigns) {
    if (campaigns < 1) throw Error("at least one campaign is required");
    if (agents < 1) throw Error("at least one agent is required");
    if (!(config.total_budget >= 0.0)) throw Error("budget must be nonnegative");
    if (!(config.cap > 0.0 && config.cap < 1.0)) throw Error("control cap must lie in (0, 1)");

    // Water-filling over campaigns: uniform spend means campaign k costs
    // agents * alpha_k, so the budget in alpha units is B / N.
    const double per_agent = config.total_budget / agents;
    // Tiny forward nudge so an exactly representable multiple of the cap
    // saturates the expected number of campaigns instead of one fewer.
    const int full = static_cast<int>(std::floor(per_agent / config.cap + 1e-9));

    std::vector<double> alphas(campaigns, 0.0);
    double remaining = per_agent;
    for (int k = 0; k < campaigns && k < full; ++k) {
        alphas[k] = config.cap;
        remaining -= config.cap;
    }
    // Residue below 1e-12 is float leftover from the saturated campaigns,
    // not a real fractional campaign.
    if (full < campaigns && remaining > 1e-12) {
        alphas[full] = std::min(remaining, config.cap);
    }
    return alphas;
}

}  // namespace adcast
