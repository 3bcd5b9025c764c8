#include "adcast/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>

#include "adcast/errors.hpp"

namespace adcast {

namespace {

// Costs closer than this are treated as equal and resolved by the
// earliest-heavy tie-break, absorbing float noise between algebraically
// identical plans evaluated along different routes.
constexpr double kCostTieEps = 1e-9;

// Earliest-heavy order: minimize late spending first, so of two equal-cost
// allocations the one moving budget toward campaign 0 wins. Formally the
// colexicographic minimum, comparing b_M down to b_0.
bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

bool tied(double a, double b) { return a == b || std::abs(a - b) <= kCostTieEps; }

}  // namespace

Problem Problem::build(SocialGraph graph, Eigen::VectorXd initial_opinions, Schedule schedule,
                       BudgetConfig budget) {
    if (initial_opinions.size() != graph.size()) {
        throw Error("initial opinion vector size does not match the graph");
    }
    for (Eigen::Index i = 0; i < initial_opinions.size(); ++i) {
        const double x = initial_opinions(i);
        if (!(x >= 0.0 && x <= 1.0)) throw Error("initial opinions must lie in [0, 1]");
    }
    if (schedule.campaigns < 1) throw Error("at least one campaign is required");
    if (schedule.campaigns != budget.campaigns) {
        throw Error("schedule and budget disagree on the campaign count");
    }
    if (schedule.regime != Regime::Long && !(schedule.delta > 0.0)) {
        throw Error("a positive inter-campaign gap is required outside the long regime");
    }

    Problem problem;
    problem.partition = detect_clusters(graph);
    if (schedule.regime != Regime::Clustered && !problem.partition.connected()) {
        throw Error("a disconnected network requires the clustered regime");
    }
    problem.laplacian = build_laplacian(graph);
    problem.centrality = adcast::centrality(problem.laplacian, problem.partition);
    problem.graph = std::move(graph);
    problem.initial_opinions = std::move(initial_opinions);
    problem.schedule = schedule;
    problem.budget = budget;
    return problem;
}

int TimeAllocation::total() const { return std::accumulate(units.begin(), units.end(), 0); }

Evaluator::Evaluator(const Problem& problem)
    : problem_(problem), propagator_(problem.laplacian) {
    if (problem_.schedule.regime != Regime::Long) {
        propagator_.flow(problem_.schedule.delta);  // warm the cache once
    }
}

InfluenceScores Evaluator::scores_at(const OpinionState& pre_jump, int campaign) const {
    switch (problem_.schedule.regime) {
        case Regime::Short:
            return per_campaign_scores(pre_jump, problem_.centrality, problem_.budget.target);
        case Regime::Long:
            return long_campaign_scores(pre_jump, problem_.centrality, problem_.budget.target,
                                        campaign);
        case Regime::Clustered:
            return cluster_scores(pre_jump, problem_.partition, problem_.centrality,
                                  problem_.budget.target);
    }
    throw Error("unknown regime");
}

OpinionState Evaluator::between_campaigns(const OpinionState& post_jump) const {
    if (problem_.schedule.regime == Regime::Long) {
        // Opinions settle to the cluster consensus before the next campaign.
        const Eigen::VectorXd limits =
            consensus_limit(post_jump, problem_.partition, problem_.centrality);
        Eigen::VectorXd settled(post_jump.size());
        for (int c = 0; c < problem_.partition.count(); ++c) {
            for (int agent : problem_.partition.clusters[c]) settled(agent) = limits(c);
        }
        return OpinionState{std::move(settled), post_jump.time};
    }
    return propagator_.advance(post_jump, problem_.schedule.delta);
}

Eigen::VectorXd Evaluator::consensus_of(const OpinionState& state) const {
    return consensus_limit(state, problem_.partition, problem_.centrality);
}

double Evaluator::cost_of(const Eigen::VectorXd& consensus) const {
    return cost_infinity(consensus, problem_.partition, problem_.budget.target);
}

CostTrace Evaluator::run(const TimeAllocation& allocation) const {
    const int campaigns = problem_.campaigns();
    if (static_cast<int>(allocation.units.size()) != campaigns) {
        throw Error("time allocation must cover every campaign");
    }
    if (allocation.total() > problem_.budget.units) {
        throw Error("time allocation exceeds the total budget");
    }
    const double cap = problem_.budget.cap;

    CostTrace trace;
    trace.controls = Eigen::MatrixXd::Zero(campaigns, problem_.agents());
    OpinionState state{problem_.initial_opinions, 0.0};
    for (int k = 0; k < campaigns; ++k) {
        const int b = allocation.units[k];
        if (b < 0) throw Error("campaign budgets must be nonnegative");
        const CampaignAllocation campaign =
            water_fill(scores_at(state, k), b * cap, cap);
        trace.pre_jump.push_back(state);
        trace.controls.row(k) = campaign.controls.transpose();
        trace.campaign_budgets.push_back(campaign.spent());
        OpinionState post = apply_campaign(state, ControlAction{campaign.controls, cap},
                                           problem_.budget.target);
        trace.post_jump.push_back(post);
        state = (k + 1 < campaigns) ? between_campaigns(post) : std::move(post);
    }
    trace.final_consensus = consensus_of(state);
    trace.cost_total = cost_of(trace.final_consensus);
    trace.cost_avg = trace.cost_total / problem_.agents();
    trace.budget_spent = trace.controls.sum();
    return trace;
}

CostTrace Evaluator::run(const Eigen::MatrixXd& controls) const {
    const int campaigns = problem_.campaigns();
    if (controls.rows() != campaigns || controls.cols() != problem_.agents()) {
        throw Error("control matrix must be campaigns x agents");
    }
    CostTrace trace;
    trace.controls = controls;
    OpinionState state{problem_.initial_opinions, 0.0};
    for (int k = 0; k < campaigns; ++k) {
        trace.pre_jump.push_back(state);
        OpinionState post = apply_campaign(
            state, ControlAction{controls.row(k).transpose(), problem_.budget.cap},
            problem_.budget.target);
        trace.post_jump.push_back(post);
        trace.campaign_budgets.push_back(controls.row(k).sum());
        state = (k + 1 < campaigns) ? between_campaigns(post) : std::move(post);
    }
    trace.final_consensus = consensus_of(state);
    trace.cost_total = cost_of(trace.final_consensus);
    trace.cost_avg = trace.cost_total / problem_.agents();
    trace.budget_spent = controls.sum();
    return trace;
}

CostTrace evaluate_plan(const Problem& problem, const TimeAllocation& allocation) {
    return Evaluator(problem).run(allocation);
}

CostTrace evaluate_plan(const Problem& problem, const Eigen::MatrixXd& controls) {
    return Evaluator(problem).run(controls);
}

namespace {

AllocationPlan pack_plan(const Evaluator& evaluator, TimeAllocation allocation) {
    const CostTrace trace = evaluator.run(allocation);
    AllocationPlan plan;
    plan.controls = trace.controls;
    plan.time_allocation = std::move(allocation);
    plan.cost_total = trace.cost_total;
    plan.cost_avg = trace.cost_avg;
    plan.budget_spent = trace.budget_spent;
    plan.regime = evaluator.problem().schedule.regime;
    return plan;
}

}  // namespace

AllocationPlan brute_force_plan(const Problem& problem, std::uint64_t node_limit) {
    const int campaigns = problem.campaigns();
    const int unit_cap = problem.unit_cap();
    const double candidates = std::pow(static_cast<double>(unit_cap) + 1.0, campaigns);
    if (candidates > static_cast<double>(node_limit)) {
        throw SearchSpaceTooLargeError(candidates, node_limit);
    }

    const Evaluator evaluator(problem);
    const double cap = problem.budget.cap;

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_units;
    std::vector<int> current(campaigns, 0);

    // Depth-first over b in lexicographic order, reusing each prefix's
    // simulated state; prefixes already over budget never expand.
    std::function<void(int, const OpinionState&, int)> descend =
        [&](int k, const OpinionState& pre, int spent) {
            const InfluenceScores scores = evaluator.scores_at(pre, k);
            const int budget_left = problem.budget.units - spent;
            const int top = std::min(unit_cap, budget_left);
            for (int b = 0; b <= top; ++b) {
                current[k] = b;
                const CampaignAllocation campaign = water_fill(scores, b * cap, cap);
                const OpinionState post = apply_campaign(
                    pre, ControlAction{campaign.controls, cap}, problem.budget.target);
                if (k + 1 == campaigns) {
                    const double cost = evaluator.cost_of(evaluator.consensus_of(post));
                    if (cost < best_cost - kCostTieEps ||
                        (tied(cost, best_cost) && colex_less(current, best_units))) {
                        best_cost = cost;
                        best_units = current;
                    }
                } else {
                    descend(k + 1, evaluator.between_campaigns(post), spent + b);
                }
            }
            current[k] = 0;
        };
    descend(0, OpinionState{problem.initial_opinions, 0.0}, 0);

    return pack_plan(evaluator, TimeAllocation{std::move(best_units)});
}

DpResult dp_plan(const Problem& problem) {
    if (problem.schedule.regime != Regime::Long) {
        throw Error("dynamic programming requires the long-campaign regime");
    }
    if (!problem.partition.connected()) {
        throw Error("dynamic programming requires a weakly connected network");
    }

    const int total_units = problem.budget.units;
    const int last = problem.campaigns() - 1;  // M
    const int unit_cap = problem.unit_cap();
    const double cap = problem.budget.cap;
    const double target = problem.budget.target;
    const Eigen::VectorXd& v = problem.centrality.values;

    // First-campaign factor from the influence powers p_i = v_i |x_i - d|:
    // spending b units multiplies the top-b powers by (1 - cap).
    const Eigen::VectorXd powers =
        v.cwiseProduct((problem.initial_opinions.array() - target).abs().matrix());
    const std::vector<int> power_order = score_order(powers);
    std::vector<double> f0(unit_cap + 1);
    f0[0] = powers.sum();
    for (int b = 1; b <= unit_cap; ++b) {
        f0[b] = f0[b - 1] - cap * powers(power_order[b - 1]);
    }
    for (double& value : f0) value = std::max(value, 0.0);

    // Consensus-stage factor over centralities alone.
    const std::vector<int> centrality_order = score_order(v);
    std::vector<double> f(unit_cap + 1);
    f[0] = 1.0;
    for (int b = 1; b <= unit_cap; ++b) {
        f[b] = f[b - 1] - cap * v(centrality_order[b - 1]);
    }

    ValueTable table;
    table.values = Eigen::MatrixXd::Zero(last + 1, total_units + 1);
    table.argmin = Eigen::MatrixXi::Zero(last + 1, total_units + 1);
    table.first_campaign_factor = f0;
    table.consensus_factor = f;

    std::vector<double> log_f0(unit_cap + 1);
    std::vector<double> log_f(unit_cap + 1);
    for (int b = 0; b <= unit_cap; ++b) {
        log_f0[b] = std::log(f0[b]);  // IEEE -inf when a spend zeroes the cost
        log_f[b] = std::log(f[b]);
    }

    // stage_value(k, b, r) = immediate log factor + value-to-go.
    const auto stage_value = [&](int k, int b, int r) {
        const double immediate = (k == 0) ? log_f0[b] : log_f[b];
        if (k == last) return immediate;
        return immediate + table.values(k + 1, r - b);
    };

    // Spend sequence from campaign k on when r units remain, following the
    // argmin links of the already-filled rows below.
    const auto suffix_of = [&](int k, int r) {
        std::vector<int> spends;
        for (int stage = k; stage <= last; ++stage) {
            const int b = table.argmin(stage, r);
            spends.push_back(b);
            r -= b;
        }
        return spends;
    };

    // b_M first, then b_{M-1}, ...: the earliest-heavy order on suffixes.
    const auto suffix_colex_before = [](const std::vector<int>& a, const std::vector<int>& b) {
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    };

    for (int k = last; k >= 0; --k) {
        for (int r = 0; r <= total_units; ++r) {
            const int top = std::min(unit_cap, r);
            double minimum = std::numeric_limits<double>::infinity();
            for (int b = 0; b <= top; ++b) {
                minimum = std::min(minimum, stage_value(k, b, r));
            }
            // Among tied spends pick the one whose full suffix is the
            // earliest-heavy minimum, matching the brute-force tie-break.
            int chosen = -1;
            std::vector<int> chosen_suffix;
            for (int b = 0; b <= top; ++b) {
                if (!tied(stage_value(k, b, r), minimum)) continue;
                if (chosen < 0) {
                    chosen = b;
                    if (k == last) break;  // empty continuation, first tie wins
                    chosen_suffix = suffix_of(k + 1, r - b);
                    continue;
                }
                if (suffix_colex_before(suffix_of(k + 1, r - b), chosen_suffix) > 0) {
                    chosen = b;
                    chosen_suffix = suffix_of(k + 1, r - b);
                }
            }
            table.values(k, r) = minimum;
            table.argmin(k, r) = chosen;
        }
    }

    DpResult result;
    std::vector<int> units(last + 1, 0);

    // A first-campaign spend that already zeroes the cost short-circuits the
    // recursion; the smallest such spend wins the lexicographic tie-break.
    const auto zero_spend = std::find(f0.begin(), f0.end(), 0.0);
    if (zero_spend != f0.end()) {
        result.degenerate_first_campaign = true;
        units[0] = static_cast<int>(zero_spend - f0.begin());
    } else {
        int remaining = total_units;
        for (int k = 0; k <= last; ++k) {
            units[k] = table.argmin(k, remaining);
            remaining -= units[k];
        }
    }

    const Evaluator evaluator(problem);
    result.plan = pack_plan(evaluator, TimeAllocation{std::move(units)});
    result.table = std::move(table);
    return result;
}

}  // namespace adcast
