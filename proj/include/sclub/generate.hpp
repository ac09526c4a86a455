#pragma once

#include <cstdint>

#include "sclub/graph.hpp"
#include "sclub/treedec.hpp"

namespace sclub {

struct GeneratedInstance {
    Graph graph;
    Partition planted;
    int noise = 0;
    TreeDecomposition decomposition;
};

/// d blocks, each a random tree of depth <= s/2 around a centre plus a few
/// chords, then exactly `noise` random edges between blocks. Deterministic in
/// `seed`. Throws std::invalid_argument when the sizes cannot be met.
GeneratedInstance generate_planted(int n, int d, int s, int noise, std::uint64_t seed);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
/// Erdos-Renyi G(n, p).
Graph random_graph(int n, double p, std::uint64_t seed);
/// Random k-tree: a (k+1)-clique grown by attaching each new vertex to a random k-clique.
Graph random_k_tree(int n, int k, std::uint64_t seed);
/// Disjoint union; the second graph's ids are shifted by a.n().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace sclub
