#include "adcast/graph.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "adcast/errors.hpp"

namespace adcast {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kNullResidualTol = 1e-9;
constexpr double kNegativeClamp = 1e-10;
constexpr double kIterationTol = 1e-12;
constexpr double kShiftRegularization = 1e-12;
constexpr int kMaxIterations = 500;

Eigen::MatrixXd cluster_laplacian(const Eigen::MatrixXd& weights, const std::vector<int>& members) {
    const int n = static_cast<int>(members.size());
    Eigen::MatrixXd sub(n, n);
    for (int r = 0; r < n; ++r) {
        double row_sum = 0.0;
        for (int c = 0; c < n; ++c) {
            if (r == c) continue;
            const double w = weights(members[r], members[c]);
            sub(r, c) = -w;
            row_sum += w;
        }
        sub(r, r) = row_sum;
    }
    return sub;
}

// Shifted inverse iteration on L^T for the left null vector. The shift of
// zero is regularized so the factorization never hits an exactly singular
// matrix; the dominant solve direction is still the null space.
Eigen::VectorXd left_null_vector(const Eigen::MatrixXd& sub_laplacian, int cluster_index) {
    const int n = static_cast<int>(sub_laplacian.rows());
    Eigen::MatrixXd shifted = sub_laplacian.transpose();
    shifted.diagonal().array() += kShiftRegularization;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);

    Eigen::VectorXd current = Eigen::VectorXd::Constant(n, 1.0 / n);
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
        Eigen::VectorXd next = lu.solve(current);
        const double total = next.sum();
        if (!std::isfinite(total) || std::abs(total) < std::numeric_limits<double>::min()) {
            throw SingularStructureError("left null-space iteration degenerated on cluster " +
                                         std::to_string(cluster_index + 1));
        }
        next /= total;
        const double step = (next - current).lpNorm<Eigen::Infinity>();
        current = std::move(next);
        if (step < kIterationTol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SingularStructureError("left null-space iteration did not converge on cluster " +
                                     std::to_string(cluster_index + 1));
    }

    // Entries that are structurally zero (agents outside the root component)
    // converge to iteration noise around 1e-24; snap them to exact zero so
    // downstream influence powers vanish instead of carrying noise.
    const double snap = current.maxCoeff() * 1e-14;
    for (int i = 0; i < n; ++i) {
        if (current(i) < -kNegativeClamp) {
            throw SingularStructureError("left null vector of cluster " +
                                         std::to_string(cluster_index + 1) +
                                         " has a negative entry");
        }
        if (current(i) < snap) current(i) = 0.0;
    }
    current /= current.sum();

    const double residual = (current.transpose() * sub_laplacian).lpNorm<Eigen::Infinity>();
    if (residual > kNullResidualTol) {
        throw SingularStructureError("left null vector residual " + std::to_string(residual) +
                                     " on cluster " + std::to_string(cluster_index + 1));
    }
    return current;
}

}  // namespace

SocialGraph SocialGraph::from_weights(Eigen::MatrixXd weights) {
    if (weights.rows() < 1 || weights.rows() != weights.cols()) {
        throw Error("weight matrix must be square with at least one agent");
    }
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        for (Eigen::Index j = 0; j < weights.cols(); ++j) {
            const double w = weights(i, j);
            if (!std::isfinite(w) || w < 0.0) {
                throw Error("weights must be finite and nonnegative");
            }
            if (i == j && w != 0.0) {
                throw Error("self-influence weights must be zero");
            }
        }
    }
    return SocialGraph{std::move(weights)};
}

Laplacian build_laplacian(const SocialGraph& graph) {
    const int n = graph.size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = graph.weights(i, j);
            m(i, j) = w == 0.0 ? 0.0 : -w;
            row_sum += w;
        }
        m(i, i) = row_sum;
    }
    return Laplacian{std::move(m)};
}

std::vector<int> ClusterPartition::membership() const {
    std::vector<int> owner(agent_count, -1);
    for (int c = 0; c < count(); ++c) {
        for (int agent : clusters[c]) owner[agent] = c;
    }
    return owner;
}

ClusterPartition detect_clusters(const SocialGraph& graph) {
    const int n = graph.size();

    // Components of the undirected support via union-find.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&parent](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (graph.weights(i, j) > 0.0 || graph.weights(j, i) > 0.0) {
                parent[find(i)] = find(j);
            }
        }
    }

    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

    ClusterPartition partition;
    partition.agent_count = n;
    for (auto& members : groups) {
        if (members.empty()) continue;
        partition.clusters.push_back(std::move(members));
    }
    std::sort(partition.clusters.begin(), partition.clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    // Weak connectivity in the spanning-tree sense: the zero eigenvalue of a
    // digraph Laplacian is semisimple, so its multiplicity is n - rank.
    for (int c = 0; c < partition.count(); ++c) {
        const auto& members = partition.clusters[c];
        const int size = static_cast<int>(members.size());
        if (size == 1) continue;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(cluster_laplacian(graph.weights, members));
        lu.setThreshold(kRankThreshold);
        if (lu.rank() < size - 1) {
            throw NoSpanningTreeError(c);
        }
    }
    return partition;
}

CentralityVector centrality(const Laplacian& laplacian, const ClusterPartition& partition) {
    const int n = laplacian.size();
    if (partition.agent_count != n) {
        throw Error("partition and Laplacian sizes disagree");
    }
    Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < partition.count(); ++c) {
        const auto& members = partition.clusters[c];
        if (members.size() == 1) {
            values(members.front()) = 1.0;
            continue;
        }
        Eigen::MatrixXd sub(members.size(), members.size());
        for (std::size_t r = 0; r < members.size(); ++r) {
            for (std::size_t col = 0; col < members.size(); ++col) {
                sub(r, col) = laplacian.matrix(members[r], members[col]);
            }
        }
        const Eigen::VectorXd v = left_null_vector(sub, c);
        for (std::size_t r = 0; r < members.size(); ++r) {
            values(members[r]) = v(r);
        }
    }
    return CentralityVector{std::move(values)};
}

double mixing_time(const Laplacian& laplacian) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(laplacian.matrix);
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double real = solver.eigenvalues()(i).real();
        if (real > 1e-9) smallest = std::min(smallest, real);
    }
    if (!std::isfinite(smallest)) return std::numeric_limits<double>::infinity();
    return 1.0 / smallest;
}

}  // namespace adcast
