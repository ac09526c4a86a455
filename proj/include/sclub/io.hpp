#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sclub/graph.hpp"
#include "sclub/treedec.hpp"

namespace sclub {

/// Format error carrying "<source>:<line>: <message>".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& message);
    const std::string& source() const noexcept { return source_; }
    int line() const noexcept { return line_; }

private:
    std::string source_;
    int line_;
};

// .gr: "p tw <n> <m>" (or "p edge <n> <m>"), "c" comments, then m lines
// "<u> <v>" (an optional leading "e" is accepted). Labels are 1-based.
Graph parse_graph(std::istream& in, const std::string& source = "<input>");
Graph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);

// .td: "s td <bags> <width+1> <n>", "b <id> <v...>", then "<i> <j>" tree edges.
// Validated against g on load.
TreeDecomposition parse_td(std::istream& in, const Graph& g, const std::string& source = "<input>");
TreeDecomposition read_td(const std::filesystem::path& path, const Graph& g);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);

// .partition: one block per line, space-separated 1-based labels.
Partition parse_partition(std::istream& in, int n, const std::string& source = "<input>");
Partition read_partition(const std::filesystem::path& path, int n);
void write_partition(std::ostream& out, const Partition& p);

}  // namespace sclub
