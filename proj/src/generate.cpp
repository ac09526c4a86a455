#include "sclub/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sclub {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

}  // namespace

GeneratedInstance generate_planted(int n, int d, int s, int noise, std::uint64_t seed) {
    if (n < 1 || d < 1 || d > n) throw std::invalid_argument("planted instance needs 1 <= d <= n");
    if (s < 2) throw std::invalid_argument("planted instance needs s >= 2");
    if (noise < 0) throw std::invalid_argument("noise must be non-negative");

    Rng rng(seed);
    std::vector<Vertex> ids(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) ids[std::size_t(v)] = v;
    std::shuffle(ids.begin(), ids.end(), rng);

    std::vector<std::vector<Vertex>> blocks(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) blocks[std::size_t(i)].push_back(ids[std::size_t(i)]);
    for (int i = d; i < n; ++i) blocks[pick(rng, std::size_t(d))].push_back(ids[std::size_t(i)]);

    const long long sizes_sq = [&] {
        long long total = 0;
        for (const auto& b : blocks) total += (long long)b.size() * (long long)b.size();
        return total;
    }();
    const long long inter_pairs = ((long long)n * n - sizes_sq) / 2;
    if (noise > inter_pairs)
        throw std::invalid_argument("only " + std::to_string(inter_pairs) + " inter-block pairs for " +
                                    std::to_string(noise) + " noise edges");

    Graph g(n);
    const int depth_limit = s / 2;
    for (const auto& block : blocks) {
        std::vector<int> depth{0};
        for (std::size_t i = 1; i < block.size(); ++i) {
            std::vector<std::size_t> open;
            for (std::size_t j = 0; j < i; ++j)
                if (depth[j] < depth_limit) open.push_back(j);
            const std::size_t parent = open[pick(rng, open.size())];
            g.add_edge(block[i], block[parent]);
            depth.push_back(depth[parent] + 1);
        }
        for (std::size_t attempt = 0; block.size() >= 3 && attempt < block.size() / 2; ++attempt) {
            const Vertex a = block[pick(rng, block.size())];
            const Vertex b = block[pick(rng, block.size())];
            if (a != b && !g.adjacent(a, b)) g.add_edge(a, b);
        }
    }

    std::vector<int> label(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (Vertex v : blocks[i]) label[std::size_t(v)] = int(i);

    if (4LL * noise + 1000 >= inter_pairs) {
        std::vector<Edge> candidates;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                if (label[std::size_t(a)] != label[std::size_t(b)]) candidates.push_back({a, b});
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (int i = 0; i < noise; ++i) g.add_edge(candidates[std::size_t(i)].u, candidates[std::size_t(i)].v);
    } else {
        for (int added = 0; added < noise;) {
            const Vertex a = Vertex(pick(rng, std::size_t(n)));
            const Vertex b = Vertex(pick(rng, std::size_t(n)));
            if (label[std::size_t(a)] == label[std::size_t(b)] || g.adjacent(a, b)) continue;
            g.add_edge(a, b);
            ++added;
        }
    }

    GeneratedInstance out;
    out.planted = Partition::from_labels(label);
    out.noise = noise;
    out.decomposition = heuristic_decomposition(g, Heuristic::MinFill);
    out.graph = std::move(g);
    return out;
}

Graph path_graph(int n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng)) g.add_edge(a, b);
    return g;
}

Graph random_k_tree(int n, int k, std::uint64_t seed) {
    if (k < 1 || n < k + 1) throw std::invalid_argument("k-tree needs n >= k+1 >= 2");
    Rng rng(seed);
    Graph g = complete_graph(k + 1);
    Graph out(n);
    for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);

    std::vector<std::vector<Vertex>> cliques;
    for (Vertex skip = 0; skip <= k; ++skip) {
        std::vector<Vertex> c;
        for (Vertex v = 0; v <= k; ++v)
            if (v != skip) c.push_back(v);
        cliques.push_back(c);
    }
    for (Vertex v = k + 1; v < n; ++v) {
        const auto base = cliques[pick(rng, cliques.size())];
        for (Vertex u : base) out.add_edge(u, v);
        for (std::size_t drop = 0; drop < base.size(); ++drop) {
            auto c = base;
            c[drop] = v;
            std::sort(c.begin(), c.end());
            cliques.push_back(std::move(c));
        }
    }
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (const Edge& e : a.edges()) g.add_edge(e.u, e.v);
    for (const Edge& e : b.edges()) g.add_edge(e.u + a.n(), e.v + a.n());
    return g;
}

}  // namespace sclub
