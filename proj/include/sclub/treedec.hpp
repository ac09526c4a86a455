#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sclub/graph.hpp"

namespace sclub {

struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;            // each sorted ascending
    std::vector<std::pair<int, int>> tree_edges;      // bag indices

    /// max |bag| - 1; -1 when there are no bags.
    int width() const;
};

/// First failed tree-decomposition condition, with a witness.
struct Violation {
    enum class Kind {
        BadVertex,        // bag names a vertex outside the graph
        NotATree,         // bag graph is not a tree
        VertexUncovered,  // condition (i)
        EdgeUncovered,    // condition (ii)
        Disconnected,     // condition (iii)
        NotNice,          // one of P.1-P.4 or a kind/bag mismatch
        WidthChanged,
    };
    Kind kind;
    std::string message;
    Vertex vertex = -1;
    Edge edge{-1, -1};
    int bag = -1;
};

std::string to_string(Violation::Kind kind);

std::optional<Violation> validate(const TreeDecomposition& td, const Graph& g);

enum class Heuristic { MinDegree, MinFill };

/// Elimination ordering turned into a clique tree. Always valid, never
/// guaranteed minimal.
TreeDecomposition heuristic_decomposition(const Graph& g, Heuristic strategy = Heuristic::MinFill);

enum class NodeKind : std::uint8_t { Leaf, Introduce, Forget, Join };
std::string to_string(NodeKind kind);

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    Vertex vertex = -1;             // introduced/forgotten vertex
    std::vector<Vertex> bag;        // sorted
    std::vector<int> children;      // 0, 1 or 2 entries
    int parent = -1;
};

/// Rooted nice decomposition. Children always have smaller indices than their
/// parent, so index order is a valid post-order.
class NiceTreeDecomposition {
public:
    NiceTreeDecomposition() = default;
    NiceTreeDecomposition(std::vector<NiceNode> nodes, int width);

    const std::vector<NiceNode>& nodes() const noexcept { return nodes_; }
    const NiceNode& node(int i) const { return nodes_.at(std::size_t(i)); }
    std::size_t size() const noexcept { return nodes_.size(); }
    int root() const noexcept { return int(nodes_.size()) - 1; }
    int width() const noexcept { return width_; }

private:
    std::vector<NiceNode> nodes_;
    int width_ = -1;
};

/// Throws std::invalid_argument if `td` is not a valid decomposition of `g`.
NiceTreeDecomposition nicify(const TreeDecomposition& td, const Graph& g);

/// P.1-P.4, per-kind bag consistency, and the three decomposition conditions.
/// `expected_width` (if given) must equal the nice width.
std::optional<Violation> validate_nice(const NiceTreeDecomposition& ntd, const Graph& g,
                                       std::optional<int> expected_width = std::nullopt);

/// Union of the bags below (and including) node i, sorted.
std::vector<Vertex> subtree_vertices(const NiceTreeDecomposition& ntd, int i);

}  // namespace sclub
