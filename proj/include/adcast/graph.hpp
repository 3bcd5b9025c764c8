#pragma once

#include <Eigen/Dense>
#include <vector>

namespace adcast {

// Directed influence graph among N agents. weights(i, j) is the strength
// with which agent j pulls on agent i's opinion; the diagonal is zero.
// Indices are 0-based in memory, 1-based in every file format.
struct SocialGraph {
    Eigen::MatrixXd weights;

    int size() const { return static_cast<int>(weights.rows()); }

    // Validates shape, nonnegativity, finiteness and the zero diagonal.
    static SocialGraph from_weights(Eigen::MatrixXd weights);
};

struct Laplacian {
    Eigen::MatrixXd matrix;

    int size() const { return static_cast<int>(matrix.rows()); }
};

// L(i,i) = sum_j a_ij and L(i,j) = -a_ij off the diagonal, so rows sum to
// zero and -L generates the consensus flow.
Laplacian build_laplacian(const SocialGraph& graph);

// Connected components of the undirected support, each verified to carry a
// directed spanning tree. Clusters are ordered by smallest member and each
// member list is ascending.
struct ClusterPartition {
    std::vector<std::vector<int>> clusters;
    int agent_count = 0;

    int count() const { return static_cast<int>(clusters.size()); }
    bool connected() const { return clusters.size() == 1; }

    // cluster index for every agent
    std::vector<int> membership() const;
};

// Throws NoSpanningTreeError when a component's Laplacian has a zero
// eigenvalue of multiplicity above one.
ClusterPartition detect_clusters(const SocialGraph& graph);

// Left null vector of the Laplacian, per cluster: nonnegative and summing
// to one over each cluster. Entry i weighs agent i's pull on the consensus
// value of its cluster.
struct CentralityVector {
    Eigen::VectorXd values;
};

CentralityVector centrality(const Laplacian& laplacian, const ClusterPartition& partition);

// Inverse of the smallest nonzero real part among the eigenvalues of L; the
// rough time constant of the consensus flow. Infinity for an edgeless graph.
double mixing_time(const Laplacian& laplacian);

}  // namespace adcast
