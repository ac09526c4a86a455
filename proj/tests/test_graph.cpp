#include <deque>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "sclub/generate.hpp"
#include "sclub/graph.hpp"
#include "support.hpp"

using namespace sclub;
using test::make_graph;

namespace {

std::vector<int> plain_bfs(const Graph& g, Vertex src, const std::vector<char>& inside) {
    std::vector<int> d(static_cast<std::size_t>(g.n()), -1);
    std::deque<Vertex> q{src};
    d[std::size_t(src)] = 0;
    while (!q.empty()) {
        const Vertex x = q.front();
        q.pop_front();
        for (Vertex y : g.neighbors(x))
            if (inside[std::size_t(y)] && d[std::size_t(y)] < 0) {
                d[std::size_t(y)] = d[std::size_t(x)] + 1;
                q.push_back(y);
            }
    }
    return d;
}

std::vector<Vertex> all_of(const Graph& g) {
    std::vector<Vertex> v(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) v[std::size_t(i)] = i;
    return v;
}

}  // namespace

TEST_SUITE("graph") {
    TEST_CASE("graph rejects self-loops and duplicates") {
        Graph g(3);
        g.add_edge(0, 1);
        CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
        CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
        CHECK_THROWS(g.add_edge(0, 3));
        CHECK(g.adjacent(1, 0));
        CHECK_FALSE(g.adjacent(1, 2));
    }

    TEST_CASE("adjacency is symmetric and degrees sum to 2m") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Graph g = random_graph(12, 0.4, seed);
            std::size_t degrees = 0;
            for (Vertex v = 0; v < g.n(); ++v) {
                degrees += g.degree(v);
                for (Vertex u : g.neighbors(v)) CHECK(g.adjacent(u, v));
            }
            CHECK(degrees == 2 * g.m());
        }
    }

    TEST_CASE("truncated distances: triangle") {
        const Graph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
        const std::vector<Vertex> src{0};
        const auto d = truncated_distances(g, src, all_of(g), 2);
        CHECK(d[0][1] == 1);
        CHECK(d[0][2] == 1);
    }

    TEST_CASE("truncated distances: path beyond the cap") {
        const Graph g = test::p4();
        const std::vector<Vertex> src{0};
        const auto d = truncated_distances(g, src, all_of(g), 2);
        CHECK(d[0][2] == 2);
        CHECK(d[0][3] == kInf);
    }

    TEST_CASE("truncated distances: induced subgraph semantics") {
        const Graph g = test::p4();
        const std::vector<Vertex> src{0}, within{0, 2, 3};
        const auto d = truncated_distances(g, src, within, 3);
        CHECK(d[0][2] == kInf);
        CHECK(d[0][1] == kInf);  // outside `within`
    }

    TEST_CASE("truncated distances reject bad ids") {
        const Graph g = test::p4();
        const std::vector<Vertex> src{7};
        CHECK_THROWS(truncated_distances(g, src, all_of(g), 2));
    }

    TEST_CASE("truncated distances with cap n-1 equal plain BFS") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 2 + int(rng() % 10);
            const Graph g = random_graph(n, 0.3, rng());
            std::vector<Vertex> within;
            std::vector<char> inside(static_cast<std::size_t>(n), 0);
            for (Vertex v = 0; v < n; ++v)
                if (rng() % 4 != 0) {
                    within.push_back(v);
                    inside[std::size_t(v)] = 1;
                }
            if (within.empty()) continue;
            const auto d = truncated_distances(g, within, within, n - 1);
            for (std::size_t i = 0; i < within.size(); ++i) {
                const auto ref = plain_bfs(g, within[i], inside);
                for (Vertex v = 0; v < n; ++v)
                    CHECK(int(d[i][std::size_t(v)]) == (ref[std::size_t(v)] < 0 ? int(kInf) : ref[std::size_t(v)]));
            }
        }
    }

    TEST_CASE("is_s_club examples") {
        const Graph c5 = test::c5();
        CHECK(is_s_club(c5, all_of(c5), 2));
        const Graph p4 = test::p4();
        CHECK_FALSE(is_s_club(p4, all_of(p4), 2));
        const std::vector<Vertex> single{2};
        for (int s = 1; s <= 4; ++s) CHECK(is_s_club(p4, single, s));
        CHECK(is_s_club(p4, std::vector<Vertex>{}, 1));
    }

    TEST_CASE("is_s_club is monotone in s and detects connectivity at n-1") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 80; ++trial) {
            const int n = 1 + int(rng() % 9);
            const Graph g = random_graph(n, 0.35, rng());
            std::vector<Vertex> c;
            for (Vertex v = 0; v < n; ++v)
                if (rng() % 2) c.push_back(v);
            for (int s = 1; s < 8; ++s)
                if (is_s_club(g, c, s)) CHECK(is_s_club(g, c, s + 1));
            CHECK(is_s_club(g, all_of(g), std::max(1, n - 1)) == (connected_components(g).size() <= 1));
        }
    }

    TEST_CASE("crossing edges examples") {
        const Graph tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
        CHECK(crossing_edges(tri, Partition::from_blocks(3, {{0, 1, 2}})).empty());

        const auto cut = crossing_edges(test::p4(), Partition::from_blocks(4, {{0, 1}, {2, 3}}));
        REQUIRE(cut.size() == 1);
        CHECK(cut[0] == Edge{1, 2});

        const Graph k4 = complete_graph(4);
        CHECK(crossing_edges(k4, Partition::from_blocks(4, {{0}, {1}, {2}, {3}})).size() == 6);
    }

    TEST_CASE("crossing edges of trivial partitions") {
        const Graph g = random_graph(9, 0.5, 3);
        CHECK(crossing_edges(g, Partition::from_blocks(9, {all_of(g)})).empty());
        std::vector<std::vector<Vertex>> singles;
        for (Vertex v = 0; v < 9; ++v) singles.push_back({v});
        CHECK(crossing_edges(g, Partition::from_blocks(9, singles)).size() == g.m());
    }

    TEST_CASE("partition validation") {
        CHECK_THROWS(Partition::from_blocks(3, {{0, 1}}));
        CHECK_THROWS(Partition::from_blocks(3, {{0, 1}, {1, 2}}));
        const auto p = Partition::from_blocks(4, {{3, 1}, {2, 0}});
        CHECK(p.block_of(1) == p.block_of(3));
        CHECK(p.block_of(0) != p.block_of(1));
        CHECK(p == Partition::from_blocks(4, {{0, 2}, {1, 3}}));
        CHECK_THROWS(crossing_edges(test::p4(), Partition::from_blocks(3, {{0, 1, 2}})));
    }

    TEST_CASE("connected components examples") {
        CHECK(connected_components(Graph(3)).size() == 3);
        const Graph tri_plus = make_graph(4, {{0, 1}, {1, 2}, {2, 0}});
        CHECK(connected_components(tri_plus).size() == 2);
        CHECK(connected_components(make_graph(3, {{0, 1}, {1, 2}})).size() == 1);
    }

    TEST_CASE("induced diameter") {
        const Graph p4 = test::p4();
        CHECK(induced_diameter(p4, all_of(p4)) == 3);
        CHECK(induced_diameter(p4, std::vector<Vertex>{0, 2}) == -1);
        CHECK(induced_diameter(test::c5(), all_of(test::c5())) == 2);
    }
}
