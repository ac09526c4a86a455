#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sclub/graph.hpp"

namespace sclub {

enum class Mode { Decide, Optimize, Oracle, Check };
enum class OutputFormat { Text, Json };

std::optional<Mode> parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct RunConfig {
    std::filesystem::path graph;
    std::optional<std::filesystem::path> decomposition;  // min-fill when absent
    std::optional<std::filesystem::path> partition;      // check mode input
    int s = 2;
    std::optional<int> k;
    bool optimize = false;
    std::optional<Mode> mode;  // inferred from k / optimize when absent
    bool certificate = false;
    bool shadow = false;
    std::optional<int> threads;  // falls back to SCLUB_THREADS, then 1
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Text;
    bool trace = false;  // per-bag JSON lines on the error stream
};

/// Thread count after applying the SCLUB_THREADS override.
int resolve_threads(const std::optional<int>& requested);

/// Runs one instance. Returns 0 (feasible / verified), 1 (infeasible / rejected)
/// or 2 (usage or format error; message on `err`).
int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err);

// Benchmarks ---------------------------------------------------------------

struct BenchSpec {
    std::string family = "path";  // path, cycle, ktree, planted, gnp
    std::vector<int> sizes{100};
    std::vector<int> s_values{3};
    int width = 2;         // ktree
    double p = 0.3;        // gnp
    int clusters = 0;      // planted; 0 = n/5
    int noise = -1;        // planted; -1 = n/5
    std::uint64_t seed = 1;
    int threads = 1;
    int repeat = 1;        // the fastest repetition is reported
};

struct BenchRow {
    std::string family;
    int n = 0;
    int tw = 0;
    int s = 0;
    std::size_t peak = 0;
    double seconds = 0.0;
    int best = -1;
};

Graph bench_graph(const BenchSpec& spec, int n, int s);

/// One row per (size, s), sizes outermost.
std::vector<BenchRow> run_bench(const BenchSpec& spec, const std::function<void(const BenchRow&)>& on_row = {});

void print_bench_header(std::ostream& out);
void print_bench_row(std::ostream& out, const BenchRow& row);
std::string bench_row_json(const BenchRow& row);

}  // namespace sclub
