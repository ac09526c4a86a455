#include "sclub/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace sclub {

int oracle_limit() {
    if (const char* env = std::getenv("SCLUB_ORACLE_LIMIT")) {
        const int value = std::atoi(env);
        if (value > 0) return value;
    }
    return 12;
}

namespace {

class ComponentSearch {
public:
    ComponentSearch(const Graph& g, std::vector<Vertex> vertices, int s)
        : g_(g), vertices_(std::move(vertices)), s_(s), block_(vertices_.size(), -1) {
        // earlier[i]: positions j < i adjacent to vertices_[i]
        earlier_.resize(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (g_.adjacent(vertices_[i], vertices_[j])) earlier_[i].push_back(j);
    }

    void solve() { descend(0, 0, 0); }

    int best() const { return best_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    void descend(std::size_t i, int blocks, int cost) {
        if (cost >= best_) return;
        if (i == vertices_.size()) {
            if (all_clubs(blocks)) {
                best_ = cost;
                witness_ = block_;
            }
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            int added = 0;
            for (std::size_t j : earlier_[i])
                if (block_[j] != b) ++added;
            block_[i] = b;
            descend(i + 1, std::max(blocks, b + 1), cost + added);
        }
        block_[i] = -1;
    }

    bool all_clubs(int blocks) const {
        std::vector<Vertex> members;
        for (int b = 0; b < blocks; ++b) {
            members.clear();
            for (std::size_t i = 0; i < vertices_.size(); ++i)
                if (block_[i] == b) members.push_back(vertices_[i]);
            if (!is_s_club(g_, members, s_)) return false;
        }
        return true;
    }

    const Graph& g_;
    std::vector<Vertex> vertices_;
    int s_;
    std::vector<std::vector<std::size_t>> earlier_;
    std::vector<int> block_;
    int best_ = std::numeric_limits<int>::max();
    std::vector<int> witness_;
};

}  // namespace

OracleResult min_deletions_bruteforce(const Graph& g, int s, std::optional<int> limit) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    const int cap = limit.value_or(oracle_limit());
    const Partition components = connected_components(g);
    for (const auto& comp : components.blocks())
        if (int(comp.size()) > cap)
            throw std::length_error("component of " + std::to_string(comp.size()) +
                                    " vertices exceeds the brute-force limit " + std::to_string(cap));

    OracleResult result;
    std::vector<int> label(static_cast<std::size_t>(g.n()), -1);
    int next_label = 0;
    for (const auto& comp : components.blocks()) {
        ComponentSearch search(g, comp, s);
        search.solve();
        result.min_deletions += search.best();
        int top = 0;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            label[std::size_t(comp[i])] = next_label + search.witness()[i];
            top = std::max(top, search.witness()[i] + 1);
        }
        next_label += top;
    }
    result.witness = Partition::from_labels(label);
    return result;
}

bool decide_bruteforce(const Graph& g, int s, int k, std::optional<int> limit) {
    return min_deletions_bruteforce(g, s, limit).min_deletions <= k;
}

GroundTruth cluster_ground_truth(const Graph& g, std::span<const Vertex> c, std::span<const Vertex> boundary,
                                 int s) {
    std::vector<Vertex> members(c.begin(), c.end());
    std::sort(members.begin(), members.end());
    std::vector<Vertex> bnd(boundary.begin(), boundary.end());
    std::sort(bnd.begin(), bnd.end());
    for (Vertex a : bnd)
        if (!std::binary_search(members.begin(), members.end(), a))
            throw std::invalid_argument("boundary vertex outside the cluster");
    std::vector<Vertex> interior;
    std::set_difference(members.begin(), members.end(), bnd.begin(), bnd.end(), std::back_inserter(interior));

    const auto from_boundary = truncated_distances(g, bnd, members, s);
    const std::size_t b = bnd.size();

    GroundTruth truth;
    ClusterRecord& rec = truth.record;
    rec.boundary = bnd;
    rec.dist.resize(b * b);
    for (std::size_t x = 0; x < b; ++x)
        for (std::size_t y = 0; y < b; ++y) rec.dist[x * b + y] = from_boundary[x][std::size_t(bnd[y])];

    // Row per interior vertex (duplicates merged by canonicalize).
    for (Vertex u : interior)
        for (std::size_t a = 0; a < b; ++a) rec.classes.push_back(from_boundary[a][std::size_t(u)]);

    if (!interior.empty()) {
        const auto among = truncated_distances(g, interior, members, s);
        for (std::size_t i = 0; i < interior.size(); ++i)
            for (std::size_t j = i + 1; j < interior.size(); ++j) {
                if (among[i][std::size_t(interior[j])] != kInf) continue;
                auto outcome = request_from_distances(rec.row(i), rec.row(j), rec.dist, s);
                if (outcome.kind == RequestOutcome::Kind::AllStar) {
                    truth.all_star = true;
                    continue;
                }
                if (outcome.kind == RequestOutcome::Kind::Fulfilled)
                    throw std::logic_error("ground truth: far pair reported as fulfilled");
                rec.requests.push_back(Request{std::uint32_t(i), std::uint32_t(j), std::move(outcome.cells)});
            }
    }
    canonicalize(rec);
    return truth;
}

std::optional<std::string> shadow_mismatch(const Graph& g, std::span<const Vertex> subtree,
                                           std::span<const Vertex> bag, const Solution& sol, int s) {
    const auto& label = sol.shadow;
    if (int(label.size()) != g.n()) return "shadow labels missing";
    std::vector<char> inside(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : subtree) inside[std::size_t(v)] = 1;
    for (Vertex v = 0; v < g.n(); ++v)
        if ((label[std::size_t(v)] != -1) != bool(inside[std::size_t(v)]))
            return "shadow labels disagree with the subtree at vertex " + std::to_string(v);

    int crossing = 0;
    for (const Edge& e : g.edges())
        if (inside[std::size_t(e.u)] && inside[std::size_t(e.v)] && label[std::size_t(e.u)] != label[std::size_t(e.v)])
            ++crossing;
    if (crossing != sol.counter)
        return "counter " + std::to_string(sol.counter) + " but explicit partition crosses " +
               std::to_string(crossing) + " edges";

    std::vector<Vertex> covered;
    for (const auto& rec : sol.clusters) {
        const int lab = label[std::size_t(rec.boundary.front())];
        std::vector<Vertex> members, boundary;
        for (Vertex v : subtree)
            if (label[std::size_t(v)] == lab) members.push_back(v);
        for (Vertex v : bag)
            if (label[std::size_t(v)] == lab) boundary.push_back(v);
        if (boundary != rec.boundary)
            return "boundary of cluster at " + std::to_string(rec.boundary.front()) + " disagrees";
        covered.insert(covered.end(), boundary.begin(), boundary.end());
        const auto truth = cluster_ground_truth(g, members, boundary, s);
        if (truth.all_star)
            return "cluster at " + std::to_string(rec.boundary.front()) + " has an unsatisfiable far pair";
        if (truth.record.dist != rec.dist)
            return "D table of cluster at " + std::to_string(rec.boundary.front()) + " disagrees";
        if (truth.record.classes != rec.classes)
            return "H rows of cluster at " + std::to_string(rec.boundary.front()) + " disagree";
        if (truth.record.requests != rec.requests)
            return "requests of cluster at " + std::to_string(rec.boundary.front()) + " disagree";
    }
    std::sort(covered.begin(), covered.end());
    if (!std::equal(covered.begin(), covered.end(), bag.begin(), bag.end()))
        return "cluster boundaries do not partition the bag";

    // Complete clusters must already be s-clubs.
    std::vector<int> open_labels;
    for (const auto& rec : sol.clusters) open_labels.push_back(label[std::size_t(rec.boundary.front())]);
    std::vector<int> seen;
    for (Vertex v : subtree) {
        const int lab = label[std::size_t(v)];
        if (std::find(open_labels.begin(), open_labels.end(), lab) != open_labels.end()) continue;
        if (std::find(seen.begin(), seen.end(), lab) != seen.end()) continue;
        seen.push_back(lab);
        std::vector<Vertex> members;
        for (Vertex u : subtree)
            if (label[std::size_t(u)] == lab) members.push_back(u);
        if (!is_s_club(g, members, s)) return "complete cluster labelled " + std::to_string(lab) + " is not an s-club";
    }
    return std::nullopt;
}

}  // namespace sclub
