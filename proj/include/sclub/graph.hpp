#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sclub {

using Vertex = std::int32_t;

/// Truncated distance value. Finite values live in [0, cap]; kInf marks
/// "farther than cap or unreachable". kStar is the request wildcard and never
/// compares as a distance.
using Dist = std::uint8_t;
inline constexpr Dist kInf = 0xFF;
inline constexpr Dist kStar = 0xFE;
inline constexpr int kMaxDistance = 0xFD;

/// a + b with INF saturation; anything above `cap` collapses to kInf.
constexpr Dist add_capped(Dist a, Dist b, int cap) noexcept {
    if (a == kInf || b == kInf) return kInf;
    const int sum = int(a) + int(b);
    return sum > cap ? kInf : Dist(sum);
}

constexpr Dist cap_value(int d, int cap) noexcept {
    return (d < 0 || d > cap) ? kInf : Dist(d);
}

struct Edge {
    Vertex u = 0;
    Vertex v = 0;  // u < v once normalized

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(Vertex a, Vertex b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Undirected simple graph on dense ids 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    /// Throws std::invalid_argument on self-loops or duplicate edges and
    /// std::out_of_range on bad ids.
    static Graph from_edges(int n, std::span<const Edge> edges);

    void add_edge(Vertex a, Vertex b);

    int n() const noexcept { return int(adj_.size()); }
    std::size_t m() const noexcept { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(std::size_t(v)); }
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool adjacent(Vertex a, Vertex b) const;

    /// Edges in insertion order, each normalized u < v.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    void check_vertex(Vertex v) const;

private:
    std::vector<std::vector<Vertex>> adj_;  // sorted
    std::vector<Edge> edges_;
};

/// Disjoint blocks covering 0..n-1.
class Partition {
public:
    Partition() = default;

    /// Validates disjointness and coverage of 0..n-1.
    static Partition from_blocks(int n, std::vector<std::vector<Vertex>> blocks);
    /// labels[v] = arbitrary block label; blocks come out ordered by smallest member.
    static Partition from_labels(std::span<const int> labels);

    int n() const noexcept { return int(block_of_.size()); }
    std::size_t size() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<Vertex>>& blocks() const noexcept { return blocks_; }
    int block_of(Vertex v) const { return block_of_.at(std::size_t(v)); }

    /// Blocks sorted internally and by smallest member; equal partitions compare equal.
    Partition canonical() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.canonical().blocks_ == b.canonical().blocks_;
    }

private:
    std::vector<std::vector<Vertex>> blocks_;
    std::vector<int> block_of_;
};

/// Row i holds distances from sources[i] to every vertex of g, measured
/// inside g[within] and truncated at cap (vertices outside `within` are kInf).
std::vector<std::vector<Dist>> truncated_distances(const Graph& g, std::span<const Vertex> sources,
                                                   std::span<const Vertex> within, int cap);

/// Every pair of `c` at distance <= s inside g[c]. Empty and singleton sets qualify.
bool is_s_club(const Graph& g, std::span<const Vertex> c, int s);

std::vector<Edge> crossing_edges(const Graph& g, const Partition& p);

Partition connected_components(const Graph& g);

/// Diameter of g[c]; -1 if g[c] is disconnected. 0 for |c| <= 1.
int induced_diameter(const Graph& g, std::span<const Vertex> c);

}  // namespace sclub
