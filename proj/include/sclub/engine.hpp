#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sclub/graph.hpp"
#include "sclub/records.hpp"
#include "sclub/treedec.hpp"

namespace sclub {

struct Instance {
    Graph graph;
    int s = 2;
    int k = 0;

    /// Budget k = m: the DP then reports the exact minimum.
    static Instance optimize(Graph g, int s);
};

struct Certificate {
    Partition partition;
    std::vector<Edge> deleted;
};

struct BagEvent {
    int node = -1;
    NodeKind kind = NodeKind::Leaf;
    std::size_t solutions = 0;
    double seconds = 0.0;
};

struct EngineOptions {
    bool certificate = false;  // keep back-pointers for reconstruction
    bool shadow = false;       // carry explicit partitions and re-derive every record
    int threads = 1;
    std::function<void(const BagEvent&)> trace;
};

struct DpResult {
    bool feasible = false;
    int best_counter = -1;
    std::optional<Certificate> certificate;
    std::vector<std::size_t> bag_sizes;  // per nice node, post-order index
    std::size_t peak_solutions = 0;
    int failed_node = -1;                // first bag whose solution set came out empty
    std::size_t shadow_checks = 0;
    double seconds = 0.0;
};

/// Thrown in shadow mode when a stored record disagrees with the ground truth.
class ShadowMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Full bottom-up run. Throws std::invalid_argument if `ntd` is not a nice
/// decomposition of the instance graph, or s/k are out of range.
DpResult run(const Instance& inst, const NiceTreeDecomposition& ntd, const EngineOptions& options = {});

/// Convenience: min-fill decomposition, nicified.
DpResult run(const Instance& inst, const EngineOptions& options = {});

// Bag handlers. Outputs are deduplicated and ordered by canonical key.

struct HandlerContext {
    const Graph& graph;
    int s;
    int k;
    int threads = 1;
    bool shadow = false;
};

std::vector<Solution> handle_leaf(const HandlerContext& ctx);
std::vector<Solution> handle_introduce(const HandlerContext& ctx, const NiceNode& node,
                                       const std::vector<Solution>& child);
std::vector<Solution> handle_forget(const HandlerContext& ctx, const NiceNode& node,
                                    const std::vector<Solution>& child);
std::vector<Solution> handle_join(const HandlerContext& ctx, const NiceNode& node,
                                  const std::vector<Solution>& left, const std::vector<Solution>& right);

// Record-level transitions used by the handlers. nullopt = the candidate dies.

/// v joins the cluster; v's neighbours in the cluster must all be boundary vertices.
std::optional<ClusterRecord> introduce_into(const ClusterRecord& rec, Vertex v, const Graph& g, int s);

/// v leaves the boundary of a cluster that keeps at least one other boundary vertex.
std::optional<ClusterRecord> forget_from(const ClusterRecord& rec, Vertex v, int s);

/// Completion test for a cluster whose last boundary vertex is being forgotten.
bool completion_ok(const ClusterRecord& rec);

/// Merge two records over the same boundary with disjoint interiors.
std::optional<ClusterRecord> join_records(const ClusterRecord& left, const ClusterRecord& right, int s);

/// Walks back-pointers from the root. `trails[node][i]` holds the bag
/// partition and provenance of solution i at that node.
struct Trail {
    std::vector<std::vector<Vertex>> boundaries;
    Provenance from;
};
Certificate reconstruct_certificate(const Graph& g, const NiceTreeDecomposition& ntd,
                                    const std::vector<std::vector<Trail>>& trails, int root_solution);

}  // namespace sclub
