#include "sclub/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace sclub {

Graph::Graph(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.resize(std::size_t(n));
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n())
        throw std::out_of_range("vertex id " + std::to_string(v) + " out of range [0," +
                                std::to_string(n()) + ")");
}

void Graph::add_edge(Vertex a, Vertex b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
    auto& na = adj_[std::size_t(a)];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b)
        throw std::invalid_argument("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    na.insert(it, b);
    auto& nb = adj_[std::size_t(b)];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    edges_.push_back(make_edge(a, b));
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

Partition Partition::from_blocks(int n, std::vector<std::vector<Vertex>> blocks) {
    Partition p;
    p.block_of_.assign(std::size_t(n), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty()) throw std::invalid_argument("empty block in partition");
        for (Vertex v : blocks[i]) {
            if (v < 0 || v >= n)
                throw std::out_of_range("partition vertex " + std::to_string(v) + " out of range");
            if (p.block_of_[std::size_t(v)] != -1)
                throw std::invalid_argument("vertex " + std::to_string(v) + " in two blocks");
            p.block_of_[std::size_t(v)] = int(i);
        }
    }
    for (int v = 0; v < n; ++v)
        if (p.block_of_[std::size_t(v)] == -1)
            throw std::invalid_argument("vertex " + std::to_string(v) + " not covered by partition");
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::from_labels(std::span<const int> labels) {
    std::map<int, std::size_t> index;
    std::vector<std::vector<Vertex>> blocks;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto [it, fresh] = index.try_emplace(labels[v], blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(Vertex(v));
    }
    return from_blocks(int(labels.size()), std::move(blocks));
}

Partition Partition::canonical() const {
    auto blocks = blocks_;
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return from_blocks(n(), std::move(blocks));
}

namespace {

// BFS inside g[mask] from `src`, stopping at depth `cap`. Unreached stays -1.
void bounded_bfs(const Graph& g, const std::vector<char>& mask, Vertex src, int cap,
                 std::vector<int>& dist, std::vector<Vertex>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[std::size_t(src)] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        const int du = dist[std::size_t(u)];
        if (du >= cap) continue;
        for (Vertex w : g.neighbors(u)) {
            if (!mask[std::size_t(w)] || dist[std::size_t(w)] != -1) continue;
            dist[std::size_t(w)] = du + 1;
            queue.push_back(w);
        }
    }
}

std::vector<char> membership(const Graph& g, std::span<const Vertex> set) {
    std::vector<char> mask(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : set) {
        g.check_vertex(v);
        mask[std::size_t(v)] = 1;
    }
    return mask;
}

}  // namespace

std::vector<std::vector<Dist>> truncated_distances(const Graph& g, std::span<const Vertex> sources,
                                                   std::span<const Vertex> within, int cap) {
    if (cap < 1 || cap > kMaxDistance) throw std::invalid_argument("distance cap out of range");
    const auto mask = membership(g, within);
    std::vector<std::vector<Dist>> table;
    table.reserve(sources.size());
    std::vector<int> dist(static_cast<std::size_t>(g.n()));
    std::vector<Vertex> queue;
    for (Vertex src : sources) {
        g.check_vertex(src);
        if (!mask[std::size_t(src)]) throw std::invalid_argument("source outside the within-set");
        bounded_bfs(g, mask, src, cap, dist, queue);
        auto& row = table.emplace_back(std::size_t(g.n()), kInf);
        for (Vertex v : queue) row[std::size_t(v)] = Dist(dist[std::size_t(v)]);
    }
    return table;
}

bool is_s_club(const Graph& g, std::span<const Vertex> c, int s) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    const auto mask = membership(g, c);
    if (c.size() <= 1) return true;
    std::vector<int> dist(static_cast<std::size_t>(g.n()));
    std::vector<Vertex> queue;
    for (Vertex src : c) {
        bounded_bfs(g, mask, src, s, dist, queue);
        if (queue.size() != c.size()) return false;
    }
    return true;
}

int induced_diameter(const Graph& g, std::span<const Vertex> c) {
    const auto mask = membership(g, c);
    std::vector<int> dist(static_cast<std::size_t>(g.n()));
    std::vector<Vertex> queue;
    int diameter = 0;
    for (Vertex src : c) {
        bounded_bfs(g, mask, src, g.n(), dist, queue);
        if (queue.size() != c.size()) return -1;
        diameter = std::max(diameter, dist[std::size_t(queue.back())]);
    }
    return diameter;
}

std::vector<Edge> crossing_edges(const Graph& g, const Partition& p) {
    if (p.n() != g.n()) throw std::invalid_argument("partition does not cover the graph's vertex set");
    std::vector<Edge> out;
    for (const Edge& e : g.edges())
        if (p.block_of(e.u) != p.block_of(e.v)) out.push_back(e);
    return out;
}

Partition connected_components(const Graph& g) {
    std::vector<int> label(static_cast<std::size_t>(g.n()), -1);
    std::vector<Vertex> stack;
    int next = 0;
    for (Vertex root = 0; root < g.n(); ++root) {
        if (label[std::size_t(root)] != -1) continue;
        label[std::size_t(root)] = next;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (label[std::size_t(w)] != -1) continue;
                label[std::size_t(w)] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return Partition::from_labels(label);
}

}  // namespace sclub
