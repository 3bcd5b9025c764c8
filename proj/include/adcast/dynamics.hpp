#pragma once

#include <Eigen/Dense>
#include <map>

#include "adcast/graph.hpp"

namespace adcast {

// Opinion vector in [0,1]^N plus the current time (abstract units).
struct OpinionState {
    Eigen::VectorXd opinions;
    double time = 0.0;

    int size() const { return static_cast<int>(opinions.size()); }
};

// One campaign's per-agent spend, each component in [0, cap], cap in (0,1).
struct ControlAction {
    Eigen::VectorXd controls;
    double cap = 0.0;
};

// Budget setup shared by allocators and planners. In discrete-action mode
// the total splits into Q units of size cap.
struct BudgetConfig {
    double total_budget = 0.0;  // B
    double cap = 0.0;           // per-agent per-campaign saturation, in (0,1)
    int units = 0;              // Q, with B = Q * cap in discrete mode
    int target = 1;             // d, the opinion the marketer pushes toward
    int campaigns = 1;          // M + 1

    static BudgetConfig discrete(int units, double cap, int target, int campaigns);
};

// exp(A) by scaling and squaring with Pade approximants, degree switched on
// the 1-norm up to 13 (Higham 2005). Throws NonFiniteError if the result
// contains a non-finite entry.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

// Closed-form flow between campaigns. Gap lengths repeat across campaigns,
// so exp(-L*delta) is cached per delta.
class Propagator {
  public:
    explicit Propagator(const Laplacian& laplacian) : laplacian_(laplacian.matrix) {}

    const Eigen::MatrixXd& flow(double delta) const;
    OpinionState advance(const OpinionState& state, double delta) const;

  private:
    Eigen::MatrixXd laplacian_;
    mutable std::map<double, Eigen::MatrixXd> cache_;
};

// x <- exp(-L*delta) x, time advanced by delta.
OpinionState propagate(const OpinionState& state, const Laplacian& laplacian, double delta);

// Campaign jump x_i <- u_i d + (1 - u_i) x_i; instantaneous, time unchanged.
OpinionState apply_campaign(const OpinionState& state, const ControlAction& action, int target);

// (v^i)^T x over each cluster: the value the cluster settles on if left
// alone from this state. One entry per cluster, in partition order.
Eigen::VectorXd consensus_limit(const OpinionState& state, const ClusterPartition& partition,
                                const CentralityVector& centrality);

// sum_i N_i |xinf_i - d| over clusters; divide by N for the per-agent view.
double cost_infinity(const Eigen::VectorXd& consensus_values, const ClusterPartition& partition,
                     int target);

// sum_i |x_i(T) - d| at a finite time; evaluation metric only.
double cost_finite(const OpinionState& state, int target);

}  // namespace adcast
