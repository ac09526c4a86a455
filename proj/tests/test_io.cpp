#include <random>
#include <sstream>

#include "doctest.h"
#include "sclub/generate.hpp"
#include "sclub/io.hpp"
#include "support.hpp"

using namespace sclub;

namespace {

Graph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in, "t.gr");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

TreeDecomposition parse_td_text(const std::string& text, const Graph& g) {
    std::istringstream in(text);
    return parse_td(in, g, "t.td");
}

std::string td_error_of(const std::string& text, const Graph& g) {
    try {
        parse_td_text(text, g);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("parse a 3-path") {
        const Graph g = parse("p tw 3 2\n1 2\n2 3\n");
        CHECK(g.n() == 3);
        CHECK(g.m() == 2);
        CHECK(g.adjacent(0, 1));
        CHECK(g.adjacent(1, 2));
        CHECK_FALSE(g.adjacent(0, 2));
    }

    TEST_CASE("comments, blank lines, edge prefixes and the DIMACS header") {
        const Graph g = parse("c hello\n\np edge 3 2\nc mid\ne 1 3\n  2 3  \n");
        CHECK(g.m() == 2);
        CHECK(g.adjacent(0, 2));
    }

    TEST_CASE("self-loop is rejected") {
        CHECK(error_of("p tw 2 1\n1 1\n").find("t.gr:2: self-loop") == 0);
    }

    TEST_CASE("duplicate edge is rejected") {
        CHECK(error_of("p tw 2 2\n1 2\n1 2\n").find("t.gr:3: duplicate edge") == 0);
        CHECK(error_of("p tw 2 2\n1 2\n2 1\n").find("duplicate edge") != std::string::npos);
    }

    TEST_CASE("format errors name the line") {
        CHECK(error_of("").find("missing header") != std::string::npos);
        CHECK(error_of("p td 2 1\n1 2\n").find("t.gr:1:") == 0);
        CHECK(error_of("p tw 2 2\n1 2\n").find("declares 2 edges but 1") != std::string::npos);
        CHECK(error_of("p tw 2 1\n1 2\n1 2\n").find("t.gr:3:") == 0);
        CHECK(error_of("p tw 2 1\n1 3\n").find("out of range") != std::string::npos);
        CHECK(error_of("p tw 2 1\n1 x\n").find("expected an integer") != std::string::npos);
        CHECK(error_of("p tw 2 1\n1 2 3\n").find("t.gr:2:") == 0);
    }

    TEST_CASE("graph write/parse round trip") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Graph g = random_graph(15, 0.3, seed);
            std::ostringstream out;
            write_graph(out, g);
            const Graph back = parse(out.str());
            CHECK(back.n() == g.n());
            CHECK(back.edges() == g.edges());
        }
    }

    TEST_CASE("parse a valid decomposition") {
        const Graph g = parse("p tw 3 2\n1 2\n2 3\n");
        const auto td = parse_td_text("c x\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", g);
        CHECK(td.width() == 1);
        CHECK(td.bags[0] == std::vector<Vertex>{0, 1});
        CHECK(td.tree_edges.size() == 1);
    }

    TEST_CASE("decomposition missing an edge names the witness edge") {
        const Graph g = parse("p tw 3 3\n1 2\n2 3\n1 3\n");
        const auto msg = td_error_of("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", g);
        CHECK(msg.find("edge-uncovered") != std::string::npos);
        CHECK(msg.find("witness edge 1 3") != std::string::npos);
    }

    TEST_CASE("decomposition with a split occurrence names the witness vertex") {
        const Graph g = parse("p tw 3 1\n1 2\n");
        const auto msg = td_error_of("s td 3 2 3\nb 1 1 2\nb 2 3\nb 3 1\n1 2\n2 3\n", g);
        CHECK(msg.find("occurrence-disconnected") != std::string::npos);
        CHECK(msg.find("witness vertex 1") != std::string::npos);
    }

    TEST_CASE("decomposition format errors") {
        const Graph g = parse("p tw 3 2\n1 2\n2 3\n");
        CHECK(td_error_of("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n", g).find("declared max bag size") != std::string::npos);
        CHECK(td_error_of("s td 2 2 4\nb 1 1 2\nb 2 2 3\n1 2\n", g).find("graph has 3") != std::string::npos);
        CHECK(td_error_of("s td 2 2 3\nb 1 1 2\n", g).find("defined 1") != std::string::npos);
        CHECK(td_error_of("s td 2 2 3\nb 1 1 2\nb 1 2 3\n", g).find("defined twice") != std::string::npos);
        CHECK(td_error_of("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 3\n", g).find("out of range") != std::string::npos);
        CHECK(td_error_of("s td 2 2 3\nb 1 1 1\nb 2 2 3\n1 2\n", g).find("repeats") != std::string::npos);
    }

    TEST_CASE("decomposition round trip") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 10; ++trial) {
            const Graph g = random_graph(12, 0.3, rng());
            const auto td = test::random_order_decomposition(g, rng);
            std::ostringstream out;
            write_td(out, td, g.n());
            const auto back = parse_td_text(out.str(), g);
            CHECK(back.bags == td.bags);
            CHECK(back.tree_edges == td.tree_edges);
        }
    }

    TEST_CASE("partition files") {
        std::istringstream in("c two blocks\n2 1\n3 4\n");
        const auto p = parse_partition(in, 4, "t.partition");
        CHECK(p == Partition::from_blocks(4, {{0, 1}, {2, 3}}));
        std::ostringstream out;
        write_partition(out, p);
        CHECK(out.str() == "1 2\n3 4\n");

        std::istringstream missing("1 2\n");
        CHECK_THROWS_AS(parse_partition(missing, 3, "t.partition"), ParseError);
        std::istringstream twice("1 2\n2 3\n");
        CHECK_THROWS_AS(parse_partition(twice, 3, "t.partition"), ParseError);
    }
}
