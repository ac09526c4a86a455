#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "sclub/engine.hpp"
#include "sclub/graph.hpp"
#include "sclub/treedec.hpp"

namespace test {

using sclub::Graph;
using sclub::Vertex;

inline Graph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

// a-b-c-d
inline Graph p4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Graph c5() { return make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

// Decomposition from a random elimination order: bags are {v} plus the
// neighbours still present when v is eliminated.
inline sclub::TreeDecomposition random_order_decomposition(const Graph& g, std::mt19937_64& rng) {
    const int n = g.n();
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[std::size_t(order[std::size_t(i)])] = i;

    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) adj[std::size_t(e.u)][std::size_t(e.v)] = adj[std::size_t(e.v)][std::size_t(e.u)] = 1;

    sclub::TreeDecomposition td;
    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[std::size_t(i)];
        std::vector<Vertex> later;
        for (Vertex u = 0; u < n; ++u)
            if (adj[std::size_t(v)][std::size_t(u)] && pos[std::size_t(u)] > i) later.push_back(u);
        for (Vertex a : later)
            for (Vertex b : later)
                if (a != b) adj[std::size_t(a)][std::size_t(b)] = 1;
        auto bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        int parent = n;
        for (Vertex u : later) parent = std::min(parent, pos[std::size_t(u)]);
        if (parent == n)
            roots.push_back(i);
        else
            td.tree_edges.emplace_back(i, parent);
    }
    for (std::size_t r = 1; r < roots.size(); ++r) td.tree_edges.emplace_back(roots[r - 1], roots[r]);
    return td;
}

// Every handler output of a full bottom-up pass, kept per node.
inline std::vector<std::vector<sclub::Solution>> all_tables(const Graph& g, const sclub::NiceTreeDecomposition& ntd,
                                                           int s, int k, int threads = 1) {
    const sclub::HandlerContext ctx{g, s, k, threads, false};
    std::vector<std::vector<sclub::Solution>> tables(ntd.size());
    for (int i = 0; i < int(ntd.size()); ++i) {
        const auto& nd = ntd.node(i);
        auto child = [&](int c) -> const std::vector<sclub::Solution>& {
            return tables[std::size_t(nd.children[std::size_t(c)])];
        };
        switch (nd.kind) {
            case sclub::NodeKind::Leaf: tables[std::size_t(i)] = sclub::handle_leaf(ctx); break;
            case sclub::NodeKind::Introduce: tables[std::size_t(i)] = sclub::handle_introduce(ctx, nd, child(0)); break;
            case sclub::NodeKind::Forget: tables[std::size_t(i)] = sclub::handle_forget(ctx, nd, child(0)); break;
            case sclub::NodeKind::Join: tables[std::size_t(i)] = sclub::handle_join(ctx, nd, child(0), child(1)); break;
        }
    }
    return tables;
}

}  // namespace test
