#include "sclub/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <thread>

#include "sclub/oracle.hpp"

namespace sclub {

Instance Instance::optimize(Graph g, int s) {
    const int m = int(g.m());
    return Instance{std::move(g), s, m};
}

// ---------------------------------------------------------------------------
// Record transitions

std::optional<ClusterRecord> introduce_into(const ClusterRecord& rec, Vertex v, const Graph& g, int s) {
    const std::size_t old_b = rec.width();
    const std::size_t b = old_b + 1;
    const std::size_t p = std::size_t(std::lower_bound(rec.boundary.begin(), rec.boundary.end(), v) - rec.boundary.begin());
    auto slot = [p](std::size_t a) { return a < p ? a : a + 1; };

    std::vector<char> adjacent(old_b);
    for (std::size_t a = 0; a < old_b; ++a) adjacent[a] = g.adjacent(v, rec.boundary[a]);

    // Distances to v go through a boundary neighbour of v.
    auto through_v = [&](std::span<const Dist> to_boundary) {
        Dist best = kInf;
        for (std::size_t x = 0; x < old_b; ++x)
            if (adjacent[x]) best = std::min(best, to_boundary[x]);
        return add_capped(best, 1, s);
    };

    ClusterRecord out;
    out.boundary = rec.boundary;
    out.boundary.insert(out.boundary.begin() + std::ptrdiff_t(p), v);

    std::vector<Dist> to_v(old_b);
    for (std::size_t a = 0; a < old_b; ++a) to_v[a] = through_v(std::span<const Dist>(rec.dist).subspan(a * old_b, old_b));

    out.dist.assign(b * b, kInf);
    out.dist[p * b + p] = 0;
    for (std::size_t a = 0; a < old_b; ++a) {
        out.dist[slot(a) * b + p] = out.dist[p * b + slot(a)] = to_v[a];
        for (std::size_t c = 0; c < old_b; ++c)
            out.dist[slot(a) * b + slot(c)] = std::min(rec.d(a, c), add_capped(to_v[a], to_v[c], s));
    }

    const std::size_t rows = rec.row_count();
    out.classes.assign(rows * b, kInf);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto old_row = rec.row(r);
        const Dist hv = through_v(old_row);
        Dist* row = out.classes.data() + r * b;
        row[p] = hv;
        for (std::size_t a = 0; a < old_b; ++a) row[slot(a)] = std::min(old_row[a], add_capped(hv, to_v[a], s));
    }

    for (const Request& q : rec.requests) {
        auto outcome = request_from_distances(out.row(q.w), out.row(q.z), out.dist, s);
        switch (outcome.kind) {
            case RequestOutcome::Kind::Fulfilled: break;
            case RequestOutcome::Kind::AllStar: return std::nullopt;
            case RequestOutcome::Kind::Open: out.requests.push_back(Request{q.w, q.z, std::move(outcome.cells)}); break;
        }
    }
    canonicalize(out);
    return out;
}

bool completion_ok(const ClusterRecord& rec) {
    if (!rec.requests.empty()) return false;
    for (Dist d : rec.dist)
        if (d == kInf) return false;
    for (Dist d : rec.classes)
        if (d == kInf) return false;
    return true;
}

std::optional<ClusterRecord> forget_from(const ClusterRecord& rec, Vertex v, int s) {
    const std::size_t old_b = rec.width();
    const auto it = std::lower_bound(rec.boundary.begin(), rec.boundary.end(), v);
    if (it == rec.boundary.end() || *it != v) throw std::invalid_argument("forget_from: vertex not on the boundary");
    if (old_b < 2) throw std::invalid_argument("forget_from: cluster would become complete");
    const std::size_t p = std::size_t(it - rec.boundary.begin());
    const std::size_t b = old_b - 1;

    auto shrink = [&](std::span<const Dist> full) {
        std::vector<Dist> out;
        out.reserve(b);
        for (std::size_t a = 0; a < old_b; ++a)
            if (a != p) out.push_back(full[a]);
        return out;
    };

    ClusterRecord out;
    out.boundary = rec.boundary;
    out.boundary.erase(out.boundary.begin() + std::ptrdiff_t(p));
    out.dist.reserve(b * b);
    for (std::size_t a = 0; a < old_b; ++a) {
        if (a == p) continue;
        for (std::size_t c = 0; c < old_b; ++c)
            if (c != p) out.dist.push_back(rec.d(a, c));
    }

    const std::size_t rows = rec.row_count();
    out.classes.reserve((rows + 1) * b);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto reduced = shrink(rec.row(r));
        out.classes.insert(out.classes.end(), reduced.begin(), reduced.end());
    }
    // v becomes interior; its class row is its old boundary column.
    const auto v_row = shrink(std::span<const Dist>(rec.dist).subspan(p * old_b, old_b));
    out.classes.insert(out.classes.end(), v_row.begin(), v_row.end());
    const auto v_index = std::uint32_t(rows);

    for (const Request& q : rec.requests) {
        auto outcome = request_from_distances(out.row(q.w), out.row(q.z), out.dist, s);
        switch (outcome.kind) {
            case RequestOutcome::Kind::Fulfilled: break;  // unreachable: distances unchanged
            case RequestOutcome::Kind::AllStar: return std::nullopt;
            case RequestOutcome::Kind::Open: out.requests.push_back(Request{q.w, q.z, std::move(outcome.cells)}); break;
        }
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (rec.row(r)[p] != kInf) continue;
        auto outcome = request_from_distances(out.row(r), v_row, out.dist, s);
        switch (outcome.kind) {
            case RequestOutcome::Kind::Fulfilled: break;  // unreachable: the pair is farther than s
            case RequestOutcome::Kind::AllStar: return std::nullopt;
            case RequestOutcome::Kind::Open:
                out.requests.push_back(Request{std::uint32_t(r), v_index, std::move(outcome.cells)});
                break;
        }
    }
    canonicalize(out);
    return out;
}

std::optional<ClusterRecord> join_records(const ClusterRecord& left, const ClusterRecord& right, int s) {
    if (left.boundary != right.boundary) throw std::invalid_argument("join_records: boundaries differ");
    const std::size_t b = left.width();

    ClusterRecord out;
    out.boundary = left.boundary;
    out.dist.resize(b * b);
    for (std::size_t i = 0; i < b * b; ++i) out.dist[i] = std::min(left.dist[i], right.dist[i]);
    for (std::size_t m = 0; m < b; ++m)
        for (std::size_t a = 0; a < b; ++a)
            for (std::size_t c = 0; c < b; ++c)
                out.dist[a * b + c] = std::min(out.dist[a * b + c], add_capped(out.dist[a * b + m], out.dist[m * b + c], s));

    const std::size_t left_rows = left.row_count();
    const std::size_t right_rows = right.row_count();
    out.classes.reserve((left_rows + right_rows) * b);
    auto close = [&](std::span<const Dist> row) {
        for (std::size_t c = 0; c < b; ++c) {
            Dist best = kInf;
            for (std::size_t a = 0; a < b; ++a) best = std::min(best, add_capped(row[a], out.dist[a * b + c], s));
            out.classes.push_back(best);
        }
    };
    for (std::size_t r = 0; r < left_rows; ++r) close(left.row(r));
    for (std::size_t r = 0; r < right_rows; ++r) close(right.row(r));

    auto carry = [&](const Request& q, std::uint32_t offset) {
        const std::uint32_t w = q.w + offset, z = q.z + offset;
        auto outcome = request_from_distances(out.row(w), out.row(z), out.dist, s);
        switch (outcome.kind) {
            case RequestOutcome::Kind::Fulfilled: return true;
            case RequestOutcome::Kind::AllStar: return false;
            case RequestOutcome::Kind::Open: out.requests.push_back(Request{w, z, std::move(outcome.cells)}); return true;
        }
        return true;
    };
    for (const Request& q : left.requests)
        if (!carry(q, 0)) return std::nullopt;
    for (const Request& q : right.requests)
        if (!carry(q, std::uint32_t(left_rows))) return std::nullopt;

    // Pairs split across the two sides. Rows are closed under the merged
    // boundary distances, so the best w-z walk meets at a single boundary vertex.
    for (std::size_t x = 0; x < left_rows; ++x) {
        const auto wx = out.row(x);
        for (std::size_t y = 0; y < right_rows; ++y) {
            const auto zy = out.row(left_rows + y);
            Dist sigma = kInf;
            for (std::size_t a = 0; a < b; ++a) sigma = std::min(sigma, add_capped(wx[a], zy[a], s));
            if (sigma != kInf) continue;
            auto outcome = request_from_distances(wx, zy, out.dist, s);
            if (outcome.kind == RequestOutcome::Kind::AllStar) return std::nullopt;
            if (outcome.kind == RequestOutcome::Kind::Open)
                out.requests.push_back(
                    Request{std::uint32_t(x), std::uint32_t(left_rows + y), std::move(outcome.cells)});
        }
    }
    canonicalize(out);
    return out;
}

// ---------------------------------------------------------------------------
// Bag handlers

namespace {

struct Candidate {
    std::string key;
    Solution sol;
};

// Runs produce(i, out) for i in [0, count), possibly on several threads, and
// feeds the candidates to a SolutionSet in serial order.
template <class Produce>
std::vector<Solution> collect(std::size_t count, int threads, Produce produce) {
    constexpr std::size_t kMinPerWorker = 16;
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::size_t(std::max(threads, 1)), count / kMinPerWorker));
    std::vector<std::vector<Candidate>> chunks(workers);
    auto work = [&](std::size_t w) {
        const std::size_t lo = count * w / workers, hi = count * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) produce(i, chunks[w]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    SolutionSet set;
    for (auto& chunk : chunks) {
        for (auto& c : chunk) set.insert(std::move(c.key), std::move(c.sol));
        chunk.clear();
        chunk.shrink_to_fit();
    }
    return std::move(set).take_sorted();
}

void emit(std::vector<Candidate>& out, Solution sol) {
    canonicalize(sol);
    Candidate c;
    encode_canonical(sol, c.key);
    c.sol = std::move(sol);
    out.push_back(std::move(c));
}

std::size_t cluster_of(const Solution& sol, Vertex v) {
    for (std::size_t i = 0; i < sol.clusters.size(); ++i)
        if (std::binary_search(sol.clusters[i].boundary.begin(), sol.clusters[i].boundary.end(), v)) return i;
    throw std::logic_error("vertex " + std::to_string(v) + " missing from the bag partition");
}

}  // namespace

std::vector<Solution> handle_leaf(const HandlerContext& ctx) {
    Solution sol;
    if (ctx.shadow) sol.shadow.assign(std::size_t(ctx.graph.n()), -1);
    return {std::move(sol)};
}

std::vector<Solution> handle_introduce(const HandlerContext& ctx, const NiceNode& node,
                                       const std::vector<Solution>& child) {
    const Vertex v = node.vertex;
    std::vector<Vertex> bag_neighbours;
    for (Vertex u : node.bag)
        if (u != v && ctx.graph.adjacent(u, v)) bag_neighbours.push_back(u);

    return collect(child.size(), ctx.threads, [&](std::size_t i, std::vector<Candidate>& out) {
        const Solution& parent = child[i];
        {
            Solution sol;
            sol.counter = parent.counter + int(bag_neighbours.size());
            if (sol.counter <= ctx.k) {
                sol.clusters = parent.clusters;
                sol.clusters.push_back(ClusterRecord::singleton(v));
                sol.from.left = std::int32_t(i);
                if (ctx.shadow) {
                    sol.shadow = parent.shadow;
                    sol.shadow[std::size_t(v)] = v;
                }
                emit(out, std::move(sol));
            }
        }
        for (std::size_t c = 0; c < parent.clusters.size(); ++c) {
            const auto& target = parent.clusters[c];
            int inside = 0;
            for (Vertex u : bag_neighbours)
                if (std::binary_search(target.boundary.begin(), target.boundary.end(), u)) ++inside;
            const int counter = parent.counter + int(bag_neighbours.size()) - inside;
            if (counter > ctx.k) continue;
            auto grown = introduce_into(target, v, ctx.graph, ctx.s);
            if (!grown) continue;
            Solution sol;
            sol.counter = counter;
            sol.clusters = parent.clusters;
            sol.clusters[c] = std::move(*grown);
            sol.from.left = std::int32_t(i);
            if (ctx.shadow) {
                sol.shadow = parent.shadow;
                sol.shadow[std::size_t(v)] = parent.shadow[std::size_t(target.boundary.front())];
            }
            emit(out, std::move(sol));
        }
    });
}

std::vector<Solution> handle_forget(const HandlerContext& ctx, const NiceNode& node,
                                    const std::vector<Solution>& child) {
    const Vertex v = node.vertex;
    return collect(child.size(), ctx.threads, [&](std::size_t i, std::vector<Candidate>& out) {
        const Solution& parent = child[i];
        const std::size_t c = cluster_of(parent, v);
        const auto& source = parent.clusters[c];
        Solution sol;
        sol.counter = parent.counter;
        sol.from.left = std::int32_t(i);
        if (source.width() == 1) {
            if (!completion_ok(source)) return;
            sol.clusters = parent.clusters;
            sol.clusters.erase(sol.clusters.begin() + std::ptrdiff_t(c));
        } else {
            auto shrunk = forget_from(source, v, ctx.s);
            if (!shrunk) return;
            sol.clusters = parent.clusters;
            sol.clusters[c] = std::move(*shrunk);
        }
        if (ctx.shadow) sol.shadow = parent.shadow;
        emit(out, std::move(sol));
    });
}

std::vector<Solution> handle_join(const HandlerContext& ctx, const NiceNode& node, const std::vector<Solution>& left,
                                  const std::vector<Solution>& right) {
    std::map<std::string, std::vector<std::size_t>> by_partition;
    for (std::size_t j = 0; j < right.size(); ++j) by_partition[boundary_signature(right[j])].push_back(j);

    // Bag edges are counted on both sides.
    auto shared_crossing = [&](const Solution& sol) {
        int count = 0;
        for (std::size_t a = 0; a < node.bag.size(); ++a)
            for (std::size_t c = a + 1; c < node.bag.size(); ++c)
                if (ctx.graph.adjacent(node.bag[a], node.bag[c]) &&
                    cluster_of(sol, node.bag[a]) != cluster_of(sol, node.bag[c]))
                    ++count;
        return count;
    };

    return collect(left.size(), ctx.threads, [&](std::size_t i, std::vector<Candidate>& out) {
        const Solution& l = left[i];
        const auto group = by_partition.find(boundary_signature(l));
        if (group == by_partition.end()) return;
        const int overlap = shared_crossing(l);
        for (std::size_t j : group->second) {
            const Solution& r = right[j];
            const int counter = l.counter + r.counter - overlap;
            if (counter > ctx.k) continue;
            Solution sol;
            sol.counter = counter;
            sol.from = Provenance{std::int32_t(i), std::int32_t(j)};
            bool alive = true;
            for (std::size_t c = 0; c < l.clusters.size() && alive; ++c) {
                auto merged = join_records(l.clusters[c], r.clusters[c], ctx.s);
                if (!merged) alive = false;
                else sol.clusters.push_back(std::move(*merged));
            }
            if (!alive) continue;
            if (ctx.shadow) {
                sol.shadow = l.shadow;
                std::map<int, int> relabel;
                for (const auto& cl : l.clusters)
                    relabel[r.shadow[std::size_t(cl.boundary.front())]] = l.shadow[std::size_t(cl.boundary.front())];
                for (std::size_t u = 0; u < r.shadow.size(); ++u) {
                    const int lab = r.shadow[u];
                    if (lab == -1 || sol.shadow[u] != -1) continue;
                    auto it = relabel.find(lab);
                    sol.shadow[u] = it == relabel.end() ? lab : it->second;
                }
            }
            emit(out, std::move(sol));
        }
    });
}

// ---------------------------------------------------------------------------
// Driver

Certificate reconstruct_certificate(const Graph& g, const NiceTreeDecomposition& ntd,
                                    const std::vector<std::vector<Trail>>& trails, int root_solution) {
    if (trails.size() != ntd.size()) throw std::invalid_argument("certificate: provenance was not recorded");
    std::vector<int> block(static_cast<std::size_t>(g.n()), -1);
    int next_block = 0;
    std::vector<std::pair<int, int>> stack{{ntd.root(), root_solution}};
    auto trail_at = [&](int node, int idx) -> const Trail& {
        const auto& list = trails[std::size_t(node)];
        if (idx < 0 || std::size_t(idx) >= list.size()) throw std::logic_error("certificate: broken provenance chain");
        return list[std::size_t(idx)];
    };
    while (!stack.empty()) {
        auto [node, idx] = stack.back();
        stack.pop_back();
        const NiceNode& nd = ntd.node(node);
        const Trail& t = trail_at(node, idx);
        switch (nd.kind) {
            case NodeKind::Leaf: break;
            case NodeKind::Introduce: stack.emplace_back(nd.children[0], t.from.left); break;
            case NodeKind::Forget: {
                const Trail& below = trail_at(nd.children[0], t.from.left);
                for (const auto& bnd : below.boundaries) {
                    if (!std::binary_search(bnd.begin(), bnd.end(), nd.vertex)) continue;
                    Vertex other = -1;
                    for (Vertex u : bnd)
                        if (u != nd.vertex) other = u;
                    block[std::size_t(nd.vertex)] = other == -1 ? next_block++ : block[std::size_t(other)];
                    if (other != -1 && block[std::size_t(other)] == -1)
                        throw std::logic_error("certificate: bag vertex reached before its block was fixed");
                }
                stack.emplace_back(nd.children[0], t.from.left);
                break;
            }
            case NodeKind::Join:
                stack.emplace_back(nd.children[1], t.from.right);
                stack.emplace_back(nd.children[0], t.from.left);
                break;
        }
    }
    Certificate cert;
    cert.partition = Partition::from_labels(block);
    cert.deleted = crossing_edges(g, cert.partition);
    return cert;
}

namespace {

void check_instance(const Instance& inst, const NiceTreeDecomposition& ntd) {
    if (inst.s < 2 || inst.s > kMaxDistance) throw std::invalid_argument("s must lie in [2, 253]");
    if (inst.k < 0) throw std::invalid_argument("k must be non-negative");
    if (auto viol = validate_nice(ntd, inst.graph))
        throw std::invalid_argument("decomposition does not match the graph: " + viol->message);
}

}  // namespace

DpResult run(const Instance& inst, const NiceTreeDecomposition& ntd, const EngineOptions& options) {
    check_instance(inst, ntd);
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    // The budget can never usefully exceed m.
    const int budget = std::min<long long>(inst.k, (long long)inst.graph.m());
    const HandlerContext ctx{inst.graph, inst.s, budget, std::max(1, options.threads), options.shadow};
    DpResult result;
    result.bag_sizes.assign(ntd.size(), 0);

    std::vector<std::vector<Solution>> tables(ntd.size());
    std::vector<std::vector<Trail>> trails(options.certificate ? ntd.size() : 0);

    for (int i = 0; i < int(ntd.size()); ++i) {
        const auto bag_start = clock::now();
        const NiceNode& nd = ntd.node(i);
        std::vector<Solution> solutions;
        switch (nd.kind) {
            case NodeKind::Leaf: solutions = handle_leaf(ctx); break;
            case NodeKind::Introduce: solutions = handle_introduce(ctx, nd, tables[std::size_t(nd.children[0])]); break;
            case NodeKind::Forget: solutions = handle_forget(ctx, nd, tables[std::size_t(nd.children[0])]); break;
            case NodeKind::Join:
                solutions = handle_join(ctx, nd, tables[std::size_t(nd.children[0])], tables[std::size_t(nd.children[1])]);
                break;
        }
        for (int c : nd.children) std::vector<Solution>().swap(tables[std::size_t(c)]);

        if (options.shadow) {
            const auto subtree = subtree_vertices(ntd, i);
            for (const auto& sol : solutions) {
                if (auto what = shadow_mismatch(inst.graph, subtree, nd.bag, sol, inst.s))
                    throw ShadowMismatch("node " + std::to_string(i) + ": " + *what);
                ++result.shadow_checks;
            }
        }
        if (options.certificate) {
            auto& list = trails[std::size_t(i)];
            list.reserve(solutions.size());
            for (const auto& sol : solutions) {
                Trail t;
                t.from = sol.from;
                for (const auto& c : sol.clusters) t.boundaries.push_back(c.boundary);
                list.push_back(std::move(t));
            }
        }

        result.bag_sizes[std::size_t(i)] = solutions.size();
        result.peak_solutions = std::max(result.peak_solutions, solutions.size());
        if (options.trace) {
            const double secs = std::chrono::duration<double>(clock::now() - bag_start).count();
            options.trace(BagEvent{i, nd.kind, solutions.size(), secs});
        }
        if (solutions.empty()) {
            result.failed_node = i;
            result.seconds = std::chrono::duration<double>(clock::now() - start).count();
            return result;
        }
        tables[std::size_t(i)] = std::move(solutions);
    }

    const auto& root = tables[std::size_t(ntd.root())];
    // The root bag is empty, so all survivors share the empty key.
    if (root.size() != 1) throw std::logic_error("root holds more than one solution");
    result.feasible = true;
    result.best_counter = root.front().counter;
    if (options.certificate) {
        auto cert = reconstruct_certificate(inst.graph, ntd, trails, 0);
        if (int(cert.deleted.size()) != result.best_counter)
            throw std::logic_error("certificate crosses " + std::to_string(cert.deleted.size()) +
                                   " edges, expected " + std::to_string(result.best_counter));
        result.certificate = std::move(cert);
    }
    result.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return result;
}

DpResult run(const Instance& inst, const EngineOptions& options) {
    const auto td = heuristic_decomposition(inst.graph, Heuristic::MinFill);
    return run(inst, nicify(td, inst.graph), options);
}

}  // namespace sclub
