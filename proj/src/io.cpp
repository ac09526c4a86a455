#include "sclub/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sclub {

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), source_(source), line_(line) {}

namespace {

// Yields non-blank, non-comment lines split into tokens.
class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            tokens.clear();
            std::istringstream ss(line);
            for (std::string tok; ss >> tok;) tokens.push_back(tok);
            if (tokens.empty() || tokens[0] == "c") continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(source_, line_no_, message); }

    long long number(const std::string& tok) const {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(tok, &used);
        } catch (const std::exception&) {
            fail("expected an integer, got '" + tok + "'");
        }
        if (used != tok.size()) fail("expected an integer, got '" + tok + "'");
        return value;
    }

    Vertex label(const std::string& tok, int n) const {
        const long long value = number(tok);
        if (value < 1 || value > n) fail("vertex label " + tok + " out of range [1," + std::to_string(n) + "]");
        return Vertex(value - 1);
    }

    int line() const { return line_no_; }
    const std::string& source() const { return source_; }

private:
    std::istream& in_;
    std::string source_;
    int line_no_ = 0;
};

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return in;
}

}  // namespace

Graph parse_graph(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    std::vector<std::string> tok;
    if (!reader.next(tok)) reader.fail("missing header line");
    if (tok.size() != 4 || tok[0] != "p" || (tok[1] != "tw" && tok[1] != "edge"))
        reader.fail("malformed header, expected 'p tw <n> <m>'");
    const long long n = reader.number(tok[2]);
    const long long m = reader.number(tok[3]);
    if (n < 0 || m < 0 || n > (1LL << 30)) reader.fail("invalid vertex or edge count");

    Graph g(static_cast<int>(n));
    long long seen = 0;
    while (reader.next(tok)) {
        std::size_t at = 0;
        if (tok[0] == "e") at = 1;
        if (tok.size() != at + 2) reader.fail("edge line must hold exactly two labels");
        const Vertex u = reader.label(tok[at], int(n));
        const Vertex v = reader.label(tok[at + 1], int(n));
        if (u == v) reader.fail("self-loop on vertex " + tok[at]);
        if (g.adjacent(u, v)) reader.fail("duplicate edge " + tok[at] + " " + tok[at + 1]);
        if (++seen > m) reader.fail("more edges than the " + std::to_string(m) + " declared");
        g.add_edge(u, v);
    }
    if (seen != m)
        reader.fail("header declares " + std::to_string(m) + " edges but " + std::to_string(seen) + " were read");
    return g;
}

Graph read_graph(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_graph(in, path.string());
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p tw " << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

TreeDecomposition parse_td(std::istream& in, const Graph& g, const std::string& source) {
    LineReader reader(in, source);
    std::vector<std::string> tok;
    if (!reader.next(tok)) reader.fail("missing solution line");
    if (tok.size() != 5 || tok[0] != "s" || tok[1] != "td")
        reader.fail("malformed solution line, expected 's td <bags> <width+1> <n>'");
    const long long bags = reader.number(tok[2]);
    const long long declared = reader.number(tok[3]);
    const long long n = reader.number(tok[4]);
    if (bags < 0 || declared < 0) reader.fail("negative bag count or size");
    if (n != g.n()) reader.fail("decomposition is for " + tok[4] + " vertices, graph has " + std::to_string(g.n()));

    TreeDecomposition td;
    td.bags.resize(std::size_t(bags));
    std::vector<char> defined(static_cast<std::size_t>(bags), 0);
    long long defined_count = 0;
    while (reader.next(tok)) {
        if (tok[0] == "b") {
            if (tok.size() < 2) reader.fail("bag line without an id");
            const long long id = reader.number(tok[1]);
            if (id < 1 || id > bags) reader.fail("bag id " + tok[1] + " out of range");
            if (defined[std::size_t(id - 1)]) reader.fail("bag " + tok[1] + " defined twice");
            defined[std::size_t(id - 1)] = 1;
            ++defined_count;
            auto& bag = td.bags[std::size_t(id - 1)];
            for (std::size_t i = 2; i < tok.size(); ++i) bag.push_back(reader.label(tok[i], g.n()));
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) reader.fail("bag " + tok[1] + " repeats a vertex");
            continue;
        }
        if (tok.size() != 2) reader.fail("tree edge line must hold two bag ids");
        const long long a = reader.number(tok[0]);
        const long long b = reader.number(tok[1]);
        if (a < 1 || a > bags || b < 1 || b > bags) reader.fail("tree edge names a bag out of range");
        td.tree_edges.emplace_back(int(a - 1), int(b - 1));
    }
    if (defined_count != bags) reader.fail("declared " + std::to_string(bags) + " bags, defined " +
                                           std::to_string(defined_count));
    if (td.width() + 1 != declared)
        reader.fail("declared max bag size " + std::to_string(declared) + " but largest bag has " +
                    std::to_string(td.width() + 1));
    if (auto viol = validate(td, g)) {
        std::string witness;
        if (viol->kind == Violation::Kind::EdgeUncovered)
            witness = " (witness edge " + std::to_string(viol->edge.u + 1) + " " + std::to_string(viol->edge.v + 1) + ")";
        else if (viol->vertex >= 0)
            witness = " (witness vertex " + std::to_string(viol->vertex + 1) + ")";
        throw ParseError(source, reader.line(), "invalid decomposition: " + to_string(viol->kind) + witness);
    }
    return td;
}

TreeDecomposition read_td(const std::filesystem::path& path, const Graph& g) {
    auto in = open(path);
    return parse_td(in, g, path.string());
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

Partition parse_partition(std::istream& in, int n, const std::string& source) {
    LineReader reader(in, source);
    std::vector<std::string> tok;
    std::vector<std::vector<Vertex>> blocks;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    while (reader.next(tok)) {
        auto& block = blocks.emplace_back();
        for (const auto& t : tok) {
            const Vertex v = reader.label(t, n);
            if (used[std::size_t(v)]) reader.fail("vertex " + t + " appears in two blocks");
            used[std::size_t(v)] = 1;
            block.push_back(v);
        }
    }
    for (int v = 0; v < n; ++v)
        if (!used[std::size_t(v)])
            throw ParseError(source, reader.line(), "vertex " + std::to_string(v + 1) + " is in no block");
    return Partition::from_blocks(n, std::move(blocks));
}

Partition read_partition(const std::filesystem::path& path, int n) {
    auto in = open(path);
    return parse_partition(in, n, path.string());
}

void write_partition(std::ostream& out, const Partition& p) {
    const Partition canon = p.canonical();
    for (const auto& block : canon.blocks()) {
        for (std::size_t i = 0; i < block.size(); ++i) out << (i ? " " : "") << block[i] + 1;
        out << '\n';
    }
}

}  // namespace sclub
