#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adcast {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A support-connected component whose Laplacian has a zero eigenvalue of
// multiplicity above one: no single consensus value exists for it, so
// planning on that cluster is ill-posed.
struct NoSpanningTreeError : Error {
    explicit NoSpanningTreeError(int cluster)
        : Error("cluster " + std::to_string(cluster + 1) +
                " has no directed spanning tree (zero eigenvalue multiplicity > 1)"),
          cluster_index(cluster) {}
    int cluster_index;
};

// Left null space of a cluster Laplacian is not one-dimensional or the
// computed vector has meaningfully negative entries.
struct SingularStructureError : Error {
    using Error::Error;
};

// A dynamics operation produced a non-finite or out-of-box value beyond
// rounding tolerance; usually a symptom of ill-conditioned weights.
struct NonFiniteError : Error {
    using Error::Error;
};

struct SearchSpaceTooLargeError : Error {
    SearchSpaceTooLargeError(double candidate_count, std::uint64_t limit)
        : Error("brute-force search space of " + std::to_string(candidate_count) +
                " time allocations exceeds the node limit of " + std::to_string(limit)),
          candidates(candidate_count),
          node_limit(limit) {}
    double candidates;
    std::uint64_t node_limit;
};

struct GenerationFailedError : Error {
    using Error::Error;
};

struct ScenarioError : Error {
    using Error::Error;
};

}  // namespace adcast
