#include "sclub/treedec.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sclub {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, int(b.size()) - 1);
    return w;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::BadVertex: return "bad-vertex";
        case Violation::Kind::NotATree: return "not-a-tree";
        case Violation::Kind::VertexUncovered: return "vertex-uncovered";
        case Violation::Kind::EdgeUncovered: return "edge-uncovered";
        case Violation::Kind::Disconnected: return "occurrence-disconnected";
        case Violation::Kind::NotNice: return "not-nice";
        case Violation::Kind::WidthChanged: return "width-changed";
    }
    return "unknown";
}

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Leaf: return "leaf";
        case NodeKind::Introduce: return "introduce";
        case NodeKind::Forget: return "forget";
        case NodeKind::Join: return "join";
    }
    return "unknown";
}

namespace {

Violation make_violation(Violation::Kind kind, std::string message) {
    return Violation{kind, std::move(message)};
}

// Shared checker: bags + undirected tree edges against the graph.
std::optional<Violation> check_decomposition(const std::vector<std::vector<Vertex>>& bags,
                                             const std::vector<std::pair<int, int>>& tree_edges,
                                             const Graph& g) {
    const int nb = int(bags.size());
    for (int i = 0; i < nb; ++i)
        for (Vertex v : bags[std::size_t(i)])
            if (v < 0 || v >= g.n()) {
                auto viol = make_violation(Violation::Kind::BadVertex,
                                           "bag " + std::to_string(i) + " names vertex " +
                                               std::to_string(v) + " outside the graph");
                viol.bag = i;
                viol.vertex = v;
                return viol;
            }

    std::vector<std::vector<int>> tadj(static_cast<std::size_t>(nb));
    for (auto [a, b] : tree_edges) {
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b)
            return make_violation(Violation::Kind::NotATree, "tree edge references an invalid bag");
        tadj[std::size_t(a)].push_back(b);
        tadj[std::size_t(b)].push_back(a);
    }
    if (nb > 0) {
        if (int(tree_edges.size()) != nb - 1)
            return make_violation(Violation::Kind::NotATree,
                                  "bag tree has " + std::to_string(tree_edges.size()) +
                                      " edges for " + std::to_string(nb) + " bags");
        std::vector<char> seen(static_cast<std::size_t>(nb), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : tadj[std::size_t(x)])
                if (!seen[std::size_t(y)]) {
                    seen[std::size_t(y)] = 1;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != nb)
            return make_violation(Violation::Kind::NotATree, "bag tree is disconnected");
    }

    std::vector<std::vector<Vertex>> sorted = bags;
    for (auto& b : sorted) std::sort(b.begin(), b.end());
    auto in_bag = [&](int i, Vertex v) {
        const auto& b = sorted[std::size_t(i)];
        return std::binary_search(b.begin(), b.end(), v);
    };
    // occurrences[v] = bags holding v
    std::vector<std::vector<int>> occurrences(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < nb; ++i) {
        const auto& b = sorted[std::size_t(i)];
        for (std::size_t j = 0; j < b.size(); ++j)
            if (j == 0 || b[j] != b[j - 1]) occurrences[std::size_t(b[j])].push_back(i);
    }

    for (Vertex v = 0; v < g.n(); ++v)
        if (occurrences[std::size_t(v)].empty()) {
            auto viol = make_violation(Violation::Kind::VertexUncovered,
                                       "vertex " + std::to_string(v) + " appears in no bag");
            viol.vertex = v;
            return viol;
        }

    for (const Edge& e : g.edges()) {
        bool covered = false;
        for (int i : occurrences[std::size_t(e.u)])
            if (in_bag(i, e.v)) {
                covered = true;
                break;
            }
        if (!covered) {
            auto viol = make_violation(Violation::Kind::EdgeUncovered,
                                       "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                           " is contained in no bag");
            viol.edge = e;
            return viol;
        }
    }

    std::vector<char> seen(static_cast<std::size_t>(nb), 0);
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto& occ = occurrences[std::size_t(v)];
        std::vector<int> stack{occ.front()};
        seen[std::size_t(occ.front())] = 1;
        std::size_t reached = 1;
        std::vector<int> touched{occ.front()};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : tadj[std::size_t(x)])
                if (!seen[std::size_t(y)] && in_bag(y, v)) {
                    seen[std::size_t(y)] = 1;
                    touched.push_back(y);
                    ++reached;
                    stack.push_back(y);
                }
        }
        for (int x : touched) seen[std::size_t(x)] = 0;
        if (reached != occ.size()) {
            auto viol = make_violation(Violation::Kind::Disconnected,
                                       "bags containing vertex " + std::to_string(v) +
                                           " do not form a connected subtree");
            viol.vertex = v;
            viol.bag = occ.front();
            return viol;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const TreeDecomposition& td, const Graph& g) {
    return check_decomposition(td.bags, td.tree_edges, g);
}

namespace {

long long fill_in(const std::vector<std::set<Vertex>>& adj, Vertex v) {
    long long missing = 0;
    const auto& nv = adj[std::size_t(v)];
    for (auto a = nv.begin(); a != nv.end(); ++a)
        for (auto b = std::next(a); b != nv.end(); ++b)
            if (!adj[std::size_t(*a)].contains(*b)) ++missing;
    return missing;
}

}  // namespace

TreeDecomposition heuristic_decomposition(const Graph& g, Heuristic strategy) {
    const int n = g.n();
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) adj[std::size_t(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());

    std::vector<char> eliminated(static_cast<std::size_t>(n), 0);
    std::vector<long long> score(static_cast<std::size_t>(n), 0);
    // Candidates ordered by (score, degree, id).
    using Entry = std::tuple<long long, std::size_t, Vertex>;
    std::set<Entry> queue;
    std::vector<std::size_t> queued_degree(static_cast<std::size_t>(n), 0);
    auto rescore = [&](Vertex v) {
        const auto i = std::size_t(v);
        queue.erase({score[i], queued_degree[i], v});
        score[i] = strategy == Heuristic::MinFill ? fill_in(adj, v) : (long long)adj[i].size();
        queued_degree[i] = adj[i].size();
        queue.insert({score[i], queued_degree[i], v});
    };
    for (Vertex v = 0; v < n; ++v) rescore(v);

    std::vector<int> position(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Vertex>> later(static_cast<std::size_t>(n));  // neighbours at elimination time
    std::vector<Vertex> order;
    order.reserve(std::size_t(n));
    for (int step = 0; step < n; ++step) {
        const Vertex best = std::get<2>(*queue.begin());
        queue.erase(queue.begin());
        const std::vector<Vertex> nbrs(adj[std::size_t(best)].begin(), adj[std::size_t(best)].end());
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            adj[std::size_t(nbrs[i])].erase(best);
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                adj[std::size_t(nbrs[i])].insert(nbrs[j]);
                adj[std::size_t(nbrs[j])].insert(nbrs[i]);
            }
        }
        adj[std::size_t(best)].clear();
        eliminated[std::size_t(best)] = 1;
        position[std::size_t(best)] = step;
        later[std::size_t(best)] = nbrs;
        order.push_back(best);

        // Fill-in only changes within distance two of the eliminated vertex.
        std::set<Vertex> dirty(nbrs.begin(), nbrs.end());
        if (strategy == Heuristic::MinFill)
            for (Vertex a : nbrs) dirty.insert(adj[std::size_t(a)].begin(), adj[std::size_t(a)].end());
        for (Vertex d : dirty)
            if (!eliminated[std::size_t(d)]) rescore(d);
    }

    TreeDecomposition td;
    td.bags.resize(std::size_t(n));
    // Bag i belongs to order[i].
    std::vector<int> component_roots;
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[std::size_t(i)];
        auto& bag = td.bags[std::size_t(i)];
        bag = later[std::size_t(v)];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        int parent = std::numeric_limits<int>::max();
        for (Vertex u : later[std::size_t(v)]) parent = std::min(parent, position[std::size_t(u)]);
        if (parent == std::numeric_limits<int>::max())
            component_roots.push_back(i);
        else
            td.tree_edges.emplace_back(i, parent);
    }
    for (std::size_t r = 1; r < component_roots.size(); ++r)
        td.tree_edges.emplace_back(component_roots[r - 1], component_roots[r]);
    return td;
}

NiceTreeDecomposition::NiceTreeDecomposition(std::vector<NiceNode> nodes, int width)
    : nodes_(std::move(nodes)), width_(width) {}

namespace {

class NiceBuilder {
public:
    int leaf() { return add(NodeKind::Leaf, -1, {}, {}); }

    int join(int a, int b) {
        auto bag = nodes_[std::size_t(a)].bag;
        return add(NodeKind::Join, -1, std::move(bag), {a, b});
    }

    // Forget what `to` lacks, then introduce what it adds, both ascending.
    int transition(int top, const std::vector<Vertex>& to) {
        std::vector<Vertex> current = nodes_[std::size_t(top)].bag;
        std::vector<Vertex> drop, gain;
        std::set_difference(current.begin(), current.end(), to.begin(), to.end(), std::back_inserter(drop));
        std::set_difference(to.begin(), to.end(), current.begin(), current.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            current.erase(std::find(current.begin(), current.end(), v));
            top = add(NodeKind::Forget, v, current, {top});
        }
        for (Vertex v : gain) {
            current.insert(std::lower_bound(current.begin(), current.end(), v), v);
            top = add(NodeKind::Introduce, v, current, {top});
        }
        return top;
    }

    std::vector<NiceNode> take() { return std::move(nodes_); }

private:
    int add(NodeKind kind, Vertex v, std::vector<Vertex> bag, std::vector<int> children) {
        const int id = int(nodes_.size());
        for (int c : children) nodes_[std::size_t(c)].parent = id;
        nodes_.push_back(NiceNode{kind, v, std::move(bag), std::move(children), -1});
        return id;
    }

    std::vector<NiceNode> nodes_;
};

}  // namespace

NiceTreeDecomposition nicify(const TreeDecomposition& td, const Graph& g) {
    if (auto viol = validate(td, g))
        throw std::invalid_argument("invalid tree decomposition: " + viol->message);

    NiceBuilder builder;
    const int nb = int(td.bags.size());
    if (nb == 0) {
        builder.leaf();
        return NiceTreeDecomposition(builder.take(), -1);
    }

    std::vector<std::vector<Vertex>> bags = td.bags;
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    std::vector<std::vector<int>> tadj(static_cast<std::size_t>(nb));
    for (auto [a, b] : td.tree_edges) {
        tadj[std::size_t(a)].push_back(b);
        tadj[std::size_t(b)].push_back(a);
    }
    for (auto& list : tadj) std::sort(list.begin(), list.end());

    // Root at bag 0; BFS order, then build bottom-up in reverse.
    std::vector<int> order{0}, parent(std::size_t(nb), -1);
    parent[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int y : tadj[std::size_t(order[head])])
            if (parent[std::size_t(y)] == -1) {
                parent[std::size_t(y)] = order[head];
                order.push_back(y);
            }
    parent[0] = -1;

    std::vector<std::vector<int>> children(static_cast<std::size_t>(nb));
    for (int x : order)
        if (parent[std::size_t(x)] != -1) children[std::size_t(parent[std::size_t(x)])].push_back(x);

    std::vector<int> top(static_cast<std::size_t>(nb), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int x = *it;
        const auto& bag = bags[std::size_t(x)];
        if (children[std::size_t(x)].empty()) {
            top[std::size_t(x)] = builder.transition(builder.leaf(), bag);
            continue;
        }
        int acc = -1;
        for (int c : children[std::size_t(x)]) {
            const int t = builder.transition(top[std::size_t(c)], bag);
            acc = acc == -1 ? t : builder.join(acc, t);
        }
        top[std::size_t(x)] = acc;
    }
    const int root = builder.transition(top[0], {});
    auto nodes = builder.take();
    if (root != int(nodes.size()) - 1) throw std::logic_error("nicify: root is not the last node");
    return NiceTreeDecomposition(std::move(nodes), td.width());
}

std::optional<Violation> validate_nice(const NiceTreeDecomposition& ntd, const Graph& g,
                                       std::optional<int> expected_width) {
    const auto& nodes = ntd.nodes();
    auto fail = [](int node, std::string what) {
        auto viol = make_violation(Violation::Kind::NotNice,
                                   "node " + std::to_string(node) + ": " + std::move(what));
        viol.bag = node;
        return viol;
    };
    if (nodes.empty()) return fail(-1, "no nodes");
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;
    int width = -1;
    for (int i = 0; i < int(nodes.size()); ++i) {
        const auto& nd = nodes[std::size_t(i)];
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end()) ||
            std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
            return fail(i, "bag not sorted/unique");
        width = std::max(width, int(nd.bag.size()) - 1);
        if (nd.children.size() > 2) return fail(i, "more than two children (P.1)");
        for (int c : nd.children) {
            if (c < 0 || c >= i) return fail(i, "child index not below parent");
            if (nodes[std::size_t(c)].parent != i) return fail(i, "child parent link broken");
            tree_edges.emplace_back(c, i);
        }
        if ((i == ntd.root()) != (nd.parent == -1)) return fail(i, "parent link inconsistent with root");
        switch (nd.kind) {
            case NodeKind::Leaf:
                if (!nd.children.empty() || !nd.bag.empty()) return fail(i, "leaf must be empty and childless (P.4)");
                break;
            case NodeKind::Join:
                if (nd.children.size() != 2) return fail(i, "join needs two children");
                for (int c : nd.children)
                    if (nodes[std::size_t(c)].bag != nd.bag) return fail(i, "join bag differs from a child (P.2)");
                break;
            case NodeKind::Introduce:
            case NodeKind::Forget: {
                if (nd.children.size() != 1) return fail(i, "introduce/forget needs one child");
                const auto& child = nodes[std::size_t(nd.children[0])].bag;
                const auto& big = nd.kind == NodeKind::Introduce ? nd.bag : child;
                const auto& small = nd.kind == NodeKind::Introduce ? child : nd.bag;
                std::vector<Vertex> expect = small;
                expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
                if (std::binary_search(small.begin(), small.end(), nd.vertex) || expect != big)
                    return fail(i, "bag differs from child by something other than the named vertex (P.3)");
                break;
            }
        }
        bags.push_back(nd.bag);
    }
    if (!nodes[std::size_t(ntd.root())].bag.empty()) return fail(ntd.root(), "root bag not empty (P.4)");
    if (auto viol = check_decomposition(bags, tree_edges, g)) return viol;
    if (width != ntd.width() || (expected_width && *expected_width != width)) {
        auto viol = make_violation(Violation::Kind::WidthChanged,
                                   "nice width " + std::to_string(width) + " differs from expected");
        return viol;
    }
    return std::nullopt;
}

std::vector<Vertex> subtree_vertices(const NiceTreeDecomposition& ntd, int i) {
    std::set<Vertex> out;
    std::vector<int> stack{i};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        const auto& nd = ntd.node(x);
        out.insert(nd.bag.begin(), nd.bag.end());
        stack.insert(stack.end(), nd.children.begin(), nd.children.end());
    }
    return {out.begin(), out.end()};
}

}  // namespace sclub
