#include "sclub/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "sclub/engine.hpp"
#include "sclub/generate.hpp"
#include "sclub/io.hpp"
#include "sclub/oracle.hpp"
#include "sclub/treedec.hpp"

namespace sclub {

using json = nlohmann::ordered_json;

std::optional<Mode> parse_mode(const std::string& name) {
    if (name == "decide") return Mode::Decide;
    if (name == "optimize") return Mode::Optimize;
    if (name == "oracle") return Mode::Oracle;
    if (name == "check") return Mode::Check;
    return std::nullopt;
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Decide: return "decide";
        case Mode::Optimize: return "optimize";
        case Mode::Oracle: return "oracle";
        case Mode::Check: return "check";
    }
    return "unknown";
}

int resolve_threads(const std::optional<int>& requested) {
    if (requested) return std::max(1, *requested);
    if (const char* env = std::getenv("SCLUB_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1) return int(std::min(value, 256L));
    }
    return 1;
}

namespace {

using clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double since(clock::time_point start) { return std::chrono::duration<double>(clock::now() - start).count(); }

json labels(std::span<const Vertex> vs) {
    json out = json::array();
    for (Vertex v : vs) out.push_back(v + 1);
    return out;
}

json certificate_json(const Partition& p, const std::vector<Edge>& deleted) {
    json blocks = json::array();
    const Partition canon = p.canonical();
    for (const auto& b : canon.blocks()) blocks.push_back(labels(b));
    json edges = json::array();
    for (const Edge& e : deleted) edges.push_back(json::array({e.u + 1, e.v + 1}));
    return json{{"blocks", blocks}, {"deleted", edges}};
}

void print_certificate(std::ostream& out, const Partition& p, const std::vector<Edge>& deleted) {
    const Partition canon = p.canonical();
    for (const auto& b : canon.blocks()) {
        out << "block";
        for (Vertex v : b) out << ' ' << v + 1;
        out << '\n';
    }
    for (const Edge& e : deleted) out << "delete " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

Mode effective_mode(const RunConfig& c) {
    if (c.s < 2 || c.s > kMaxDistance) throw UsageError("--s must lie in [2, " + std::to_string(kMaxDistance) + "]");
    if (c.k && *c.k < 0) throw UsageError("--k must be non-negative");
    if (c.k && c.optimize) throw UsageError("give either --k or --optimize, not both");
    const Mode mode = c.mode ? *c.mode : (c.k ? Mode::Decide : Mode::Optimize);
    if (mode == Mode::Decide && !c.k) throw UsageError("decide mode needs --k");
    if (mode == Mode::Optimize && c.k) throw UsageError("optimize mode takes no --k");
    if (mode == Mode::Check && !c.partition) throw UsageError("check mode needs --partition");
    if (mode != Mode::Check && c.partition) throw UsageError("--partition is only used in check mode");
    return mode;
}

struct Outcome {
    bool feasible = false;
    std::optional<int> counter;
    std::optional<Partition> partition;
    std::vector<Edge> deleted;
    std::string reason;  // check mode rejection
};

int finish(const RunConfig& c, Mode mode, const Outcome& o, json report, std::ostream& out) {
    if (c.format == OutputFormat::Json) {
        report["feasible"] = o.feasible;
        report["best_counter"] = o.counter ? json(*o.counter) : json(nullptr);
        report["certificate"] = o.partition ? certificate_json(*o.partition, o.deleted) : json(nullptr);
        if (mode == Mode::Check) report["reason"] = o.reason.empty() ? json(nullptr) : json(o.reason);
        // Keep timing last so consumers can drop it wholesale.
        json timing = report["timing"];
        report.erase("timing");
        report["timing"] = timing;
        out << report.dump(2) << '\n';
    } else if (mode == Mode::Check) {
        if (o.feasible)
            out << "VALID " << *o.counter << '\n';
        else
            out << "INVALID " << o.reason << '\n';
    } else if (mode == Mode::Optimize || (mode == Mode::Oracle && !c.k)) {
        if (o.counter)
            out << "OPT " << *o.counter << '\n';
        else
            out << "NO\n";
        if (o.partition) print_certificate(out, *o.partition, o.deleted);
    } else {
        if (o.feasible)
            out << "YES " << *o.counter << '\n';
        else
            out << "NO\n";
        if (o.partition) print_certificate(out, *o.partition, o.deleted);
    }
    return o.feasible ? 0 : 1;
}

int run_checked(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto start = clock::now();
    const Mode mode = effective_mode(c);
    const Graph g = read_graph(c.graph);

    json report;
    report["format"] = 1;
    report["mode"] = to_string(mode);
    report["graph"] = json{{"n", g.n()}, {"m", g.m()}};
    report["s"] = c.s;
    report["k"] = c.k ? json(*c.k) : json(nullptr);
    report["seed"] = c.seed;
    report["timing"] = json::object();

    Outcome o;
    if (mode == Mode::Check) {
        const Partition p = read_partition(*c.partition, g.n());
        std::vector<std::string> problems;
        for (const auto& b : p.blocks())
            if (!is_s_club(g, b, c.s)) {
                std::ostringstream msg;
                msg << "block";
                for (Vertex v : b) msg << ' ' << v + 1;
                msg << " is not a " << c.s << "-club";
                problems.push_back(msg.str());
                break;
            }
        o.deleted = crossing_edges(g, p);
        o.counter = int(o.deleted.size());
        if (problems.empty() && c.k && *o.counter > *c.k)
            problems.push_back(std::to_string(*o.counter) + " crossing edges exceed k=" + std::to_string(*c.k));
        o.feasible = problems.empty();
        if (!o.feasible) o.reason = problems.front();
        o.partition = p;
        report["timing"]["total_seconds"] = since(start);
        return finish(c, mode, o, std::move(report), out);
    }

    if (mode == Mode::Oracle) {
        const auto found = min_deletions_bruteforce(g, c.s);
        o.feasible = !c.k || found.min_deletions <= *c.k;
        if (o.feasible) {
            o.counter = found.min_deletions;
            if (c.certificate) {
                o.partition = found.witness;
                o.deleted = crossing_edges(g, found.witness);
            }
        }
        report["oracle_limit"] = oracle_limit();
        report["timing"]["total_seconds"] = since(start);
        return finish(c, mode, o, std::move(report), out);
    }

    const auto td_start = clock::now();
    const TreeDecomposition td = c.decomposition ? read_td(*c.decomposition, g) : heuristic_decomposition(g);
    const NiceTreeDecomposition ntd = nicify(td, g);
    const double td_seconds = since(td_start);

    const Instance inst = mode == Mode::Optimize ? Instance::optimize(g, c.s) : Instance{g, c.s, *c.k};
    EngineOptions opts;
    opts.certificate = c.certificate;
    opts.shadow = c.shadow;
    opts.threads = resolve_threads(c.threads);
    json per_bag_seconds = json::array();
    opts.trace = [&](const BagEvent& e) {
        per_bag_seconds.push_back(e.seconds);
        if (c.trace)
            err << json{{"node", e.node}, {"kind", to_string(e.kind)}, {"solutions", e.solutions}, {"seconds", e.seconds}}
                       .dump()
                << '\n';
    };
    const DpResult r = run(inst, ntd, opts);

    o.feasible = r.feasible;
    if (r.feasible) o.counter = r.best_counter;
    if (r.certificate) {
        o.partition = r.certificate->partition;
        o.deleted = r.certificate->deleted;
    }

    report["decomposition"] = json{{"source", c.decomposition ? "file" : "min-fill"},
                                   {"width", td.width()},
                                   {"bags", td.bags.size()},
                                   {"nice_nodes", ntd.size()}};
    json bags = json::array();
    for (std::size_t i = 0; i < r.bag_sizes.size(); ++i) {
        const NiceNode& nd = ntd.node(int(i));
        if (i >= per_bag_seconds.size()) break;  // stopped at the failed node
        json row{{"node", i}, {"kind", to_string(nd.kind)}, {"bag_size", nd.bag.size()}, {"solutions", r.bag_sizes[i]}};
        if (nd.vertex >= 0) row["vertex"] = nd.vertex + 1;
        bags.push_back(std::move(row));
    }
    report["stats"] = json{{"peak_solutions", r.peak_solutions},
                           {"failed_node", r.failed_node >= 0 ? json(r.failed_node) : json(nullptr)},
                           {"shadow_checks", r.shadow_checks},
                           {"bags", std::move(bags)}};
    report["timing"] = json{{"total_seconds", since(start)},
                            {"decomposition_seconds", td_seconds},
                            {"dp_seconds", r.seconds},
                            {"threads", opts.threads},
                            {"bag_seconds", std::move(per_bag_seconds)}};
    return finish(c, mode, o, std::move(report), out);
}

}  // namespace

int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(config, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    }
    return 2;
}

// ---------------------------------------------------------------------------
// Benchmarks

Graph bench_graph(const BenchSpec& spec, int n, int s) {
    const std::uint64_t seed = spec.seed * 1000003ULL + std::uint64_t(n);
    if (spec.family == "path") return path_graph(n);
    if (spec.family == "cycle") return cycle_graph(n);
    if (spec.family == "ktree") return random_k_tree(n, spec.width, seed);
    if (spec.family == "gnp") return random_graph(n, spec.p, seed);
    if (spec.family == "planted") {
        const int d = spec.clusters > 0 ? spec.clusters : std::max(1, n / 5);
        const int noise = spec.noise >= 0 ? spec.noise : n / 5;
        return generate_planted(n, d, s, noise, seed).graph;
    }
    throw std::invalid_argument("unknown bench family '" + spec.family + "'");
}

std::vector<BenchRow> run_bench(const BenchSpec& spec, const std::function<void(const BenchRow&)>& on_row) {
    std::vector<BenchRow> rows;
    for (int n : spec.sizes)
        for (int s : spec.s_values) {
            const Graph g = bench_graph(spec, n, s);
            BenchRow row;
            row.family = spec.family;
            row.n = n;
            row.s = s;
            for (int rep = 0; rep < std::max(1, spec.repeat); ++rep) {
                const auto start = clock::now();
                const auto td = heuristic_decomposition(g);
                const auto ntd = nicify(td, g);
                EngineOptions opts;
                opts.threads = spec.threads;
                const auto r = run(Instance::optimize(g, s), ntd, opts);
                const double secs = since(start);
                if (rep == 0 || secs < row.seconds) row.seconds = secs;
                row.tw = td.width();
                row.peak = r.peak_solutions;
                row.best = r.best_counter;
            }
            if (on_row) on_row(row);
            rows.push_back(row);
        }
    return rows;
}

void print_bench_header(std::ostream& out) {
    out << std::left << std::setw(9) << "family" << std::right << std::setw(8) << "n" << std::setw(5) << "tw"
        << std::setw(4) << "s" << std::setw(10) << "peak" << std::setw(12) << "wall_s" << std::setw(8) << "best"
        << '\n';
}

void print_bench_row(std::ostream& out, const BenchRow& row) {
    out << std::left << std::setw(9) << row.family << std::right << std::setw(8) << row.n << std::setw(5) << row.tw
        << std::setw(4) << row.s << std::setw(10) << row.peak << std::setw(12) << std::fixed << std::setprecision(4)
        << row.seconds << std::setw(8) << row.best << '\n';
    out.unsetf(std::ios::fixed);
}

std::string bench_row_json(const BenchRow& row) {
    return json{{"family", row.family}, {"n", row.n},       {"tw", row.tw},   {"s", row.s},
                {"peak", row.peak},     {"wall", row.seconds}, {"best", row.best}}
        .dump();
}

}  // namespace sclub
