#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sclub/graph.hpp"
#include "sclub/records.hpp"

namespace sclub {

struct OracleResult {
    int min_deletions = 0;
    Partition witness;
};

/// Largest component the brute force accepts: SCLUB_ORACLE_LIMIT or 12.
int oracle_limit();

/// Exhaustive search over set partitions (restricted-growth strings, lexicographic),
/// one connected component at a time. The first partition reaching the minimum
/// is the witness. Throws std::length_error if a component exceeds `limit`.
OracleResult min_deletions_bruteforce(const Graph& g, int s, std::optional<int> limit = std::nullopt);

bool decide_bruteforce(const Graph& g, int s, int k, std::optional<int> limit = std::nullopt);

/// Records re-derived from scratch for an explicit cluster `c` with the given
/// boundary. `all_star` is set when some far pair has no usable cell; a
/// surviving DP solution can never hold such a cluster.
struct GroundTruth {
    ClusterRecord record;
    bool all_star = false;
};

GroundTruth cluster_ground_truth(const Graph& g, std::span<const Vertex> c, std::span<const Vertex> boundary,
                                 int s);

/// Shadow-mode check of one solution at a bag. `subtree` is V_i (sorted).
/// Returns a description of the first disagreement, if any.
std::optional<std::string> shadow_mismatch(const Graph& g, std::span<const Vertex> subtree,
                                           std::span<const Vertex> bag, const Solution& sol, int s);

}  // namespace sclub
