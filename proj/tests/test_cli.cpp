#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "sclub/cli.hpp"
#include "sclub/generate.hpp"
#include "sclub/io.hpp"
#include "sclub/oracle.hpp"
#include "support.hpp"

using namespace sclub;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("sclub-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path;
}

fs::path write_graph_file(const std::string& name, const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return write_file(name, out.str());
}

struct Run {
    int code;
    std::string out, err;
};

Run run(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run_cli(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config_for(const fs::path& graph, int s, std::optional<int> k = std::nullopt) {
    RunConfig c;
    c.graph = graph;
    c.s = s;
    c.k = k;
    return c;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("decide P4 with s=2, k=1") {
        const auto r = run(config_for(write_graph_file("p4.gr", test::p4()), 2, 1));
        CHECK(r.code == 0);
        CHECK(r.out == "YES 1\n");
    }

    TEST_CASE("decide P4 with s=2, k=0") {
        const auto r = run(config_for(write_graph_file("p4.gr", test::p4()), 2, 0));
        CHECK(r.code == 1);
        CHECK(r.out == "NO\n");
    }

    TEST_CASE("malformed graph file") {
        const auto r = run(config_for(write_file("bad.gr", "p tw 2 1\n1 1\n"), 2, 0));
        CHECK(r.code == 2);
        CHECK(r.err.find("bad.gr:2:") != std::string::npos);
        CHECK(run(config_for(scratch_dir() / "absent.gr", 2)).code == 2);
    }

    TEST_CASE("usage errors") {
        const auto g = write_graph_file("p4.gr", test::p4());
        CHECK(run(config_for(g, 1)).code == 2);
        auto both = config_for(g, 2, 1);
        both.optimize = true;
        CHECK(run(both).code == 2);
        auto decide = config_for(g, 2);
        decide.mode = Mode::Decide;
        CHECK(run(decide).code == 2);
        auto check = config_for(g, 2);
        check.mode = Mode::Check;
        CHECK(run(check).code == 2);
        CHECK(run(config_for(g, 2, -1)).code == 2);
    }

    TEST_CASE("optimize is the default and prints the minimum") {
        const auto r = run(config_for(write_graph_file("p4.gr", test::p4()), 2));
        CHECK(r.code == 0);
        CHECK(r.out == "OPT 1\n");
    }

    TEST_CASE("certificate lines use 1-based labels") {
        auto c = config_for(write_graph_file("p4.gr", test::p4()), 2, 1);
        c.certificate = true;
        CHECK(run(c).out == "YES 1\nblock 1 2\nblock 3 4\ndelete 2 3\n");
    }

    TEST_CASE("oracle mode") {
        const auto g = write_graph_file("p4.gr", test::p4());
        auto c = config_for(g, 2);
        c.mode = Mode::Oracle;
        CHECK(run(c).out == "OPT 1\n");
        c.k = 0;
        const auto r = run(c);
        CHECK(r.code == 1);
        CHECK(r.out == "NO\n");
        ::setenv("SCLUB_ORACLE_LIMIT", "3", 1);
        c.k.reset();
        CHECK(run(c).code == 2);
        ::unsetenv("SCLUB_ORACLE_LIMIT");
    }

    TEST_CASE("check mode accepts exactly the verifying partitions") {
        const Graph g = test::p4();
        const auto gp = write_graph_file("p4.gr", g);
        // every partition of 4 vertices
        for (int code = 0; code < 256; ++code) {
            std::vector<int> label(4);
            for (int v = 0; v < 4; ++v) label[std::size_t(v)] = (code >> (2 * v)) & 3;
            const auto p = Partition::from_labels(label);
            std::ostringstream text;
            write_partition(text, p);
            auto c = config_for(gp, 2);
            c.mode = Mode::Check;
            c.partition = write_file("p.partition", text.str());
            c.k = 1;
            bool ok = int(crossing_edges(g, p).size()) <= 1;
            for (const auto& b : p.blocks()) ok &= is_s_club(g, b, 2);
            const auto r = run(c);
            CHECK(r.code == (ok ? 0 : 1));
            CHECK(r.out.rfind(ok ? "VALID" : "INVALID", 0) == 0);
        }
    }

    TEST_CASE("json report") {
        auto c = config_for(write_graph_file("p4.gr", test::p4()), 2, 1);
        c.format = OutputFormat::Json;
        c.certificate = true;
        const auto r = run(c);
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["format"] == 1);
        CHECK(j["feasible"] == true);
        CHECK(j["best_counter"] == 1);
        CHECK(j["certificate"]["blocks"] == nlohmann::json::parse("[[1,2],[3,4]]"));
        CHECK(j["certificate"]["deleted"] == nlohmann::json::parse("[[2,3]]"));
        CHECK(j["decomposition"]["width"] == 1);
        CHECK(j["stats"]["bags"].size() == j["decomposition"]["nice_nodes"].get<std::size_t>());
        CHECK(j.contains("timing"));
    }

    TEST_CASE("json reports agree across thread counts apart from timing") {
        const auto g = write_graph_file("kt.gr", random_k_tree(30, 2, 5));
        auto strip = [](const std::string& text) {
            auto j = nlohmann::json::parse(text);
            j.erase("timing");
            return j.dump();
        };
        auto c = config_for(g, 3);
        c.format = OutputFormat::Json;
        c.certificate = true;
        c.threads = 1;
        const auto a = run(c);
        c.threads = 8;
        const auto b = run(c);
        CHECK(strip(a.out) == strip(b.out));
    }

    TEST_CASE("decomposition file is honoured and validated") {
        const auto g = write_file("p3.gr", "p tw 3 2\n1 2\n2 3\n");
        auto c = config_for(g, 2);
        c.decomposition = write_file("p3.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        c.format = OutputFormat::Json;
        const auto r = run(c);
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["decomposition"]["source"] == "file");
        c.decomposition = write_file("bad.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
        CHECK(run(c).code == 2);
    }

    TEST_CASE("trace lines") {
        auto c = config_for(write_graph_file("p4.gr", test::p4()), 2);
        c.trace = true;
        const auto r = run(c);
        std::istringstream lines(r.err);
        int count = 0;
        for (std::string line; std::getline(lines, line); ++count) CHECK(nlohmann::json::parse(line).contains("solutions"));
        CHECK(count > 0);
    }

    TEST_CASE("thread count override") {
        ::setenv("SCLUB_THREADS", "3", 1);
        CHECK(resolve_threads(std::nullopt) == 3);
        CHECK(resolve_threads(2) == 2);
        ::setenv("SCLUB_THREADS", "zero", 1);
        CHECK(resolve_threads(std::nullopt) == 1);
        ::unsetenv("SCLUB_THREADS");
        CHECK(resolve_threads(std::nullopt) == 1);
    }

    TEST_CASE("planted generator: all singletons") {
        const auto inst = generate_planted(6, 6, 2, 0, 1);
        CHECK(inst.graph.m() == 0);
        CHECK(inst.planted.size() == 6);
    }

    TEST_CASE("planted generator: one block") {
        const auto inst = generate_planted(9, 1, 2, 0, 4);
        CHECK(inst.planted.size() == 1);
        CHECK(min_deletions_bruteforce(inst.graph, 2).min_deletions == 0);
    }

    TEST_CASE("planted generator: n=12, d=3, s=2, noise=2") {
        const auto inst = generate_planted(12, 3, 2, 2, 12);
        const int opt = min_deletions_bruteforce(inst.graph, 2).min_deletions;
        const auto r = run(Instance::optimize(inst.graph, 2), nicify(inst.decomposition, inst.graph));
        CHECK(r.best_counter == opt);
        CHECK(r.best_counter <= 2);
    }

    TEST_CASE("planted generator invariants") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const int n = 5 + int(seed % 30), s = 2 + int(seed % 4);
            const int d = 1 + int(seed % 5);
            const int noise = d == 1 ? 0 : std::min(int(seed % 7), n - 1);
            const auto inst = generate_planted(n, d, s, noise, seed);
            for (const auto& b : inst.planted.blocks()) CHECK(is_s_club(inst.graph, b, s));
            CHECK(int(crossing_edges(inst.graph, inst.planted).size()) == noise);
            CHECK_FALSE(validate(inst.decomposition, inst.graph).has_value());
            // same seed, same instance
            CHECK(generate_planted(n, d, s, noise, seed).graph.edges() == inst.graph.edges());
        }
        CHECK_THROWS(generate_planted(4, 5, 2, 0, 1));
        CHECK_THROWS(generate_planted(4, 1, 2, 1, 1));
    }

    TEST_CASE("bench smoke run") {
        BenchSpec spec;
        spec.family = "cycle";
        spec.sizes = {12};
        spec.s_values = {3};
        int rows = 0;
        const auto out = run_bench(spec, [&](const BenchRow&) { ++rows; });
        REQUIRE(out.size() == 1);
        CHECK(rows == 1);
        CHECK(out[0].tw == 2);
        CHECK(out[0].best == 3);  // C12 cut into three 3-clubs of four vertices
        const auto j = nlohmann::json::parse(bench_row_json(out[0]));
        CHECK(j["n"] == 12);
        std::ostringstream table;
        print_bench_row(table, out[0]);
        CHECK(table.str().find("cycle") == 0);
    }

    TEST_CASE("bench families build") {
        for (const char* family : {"path", "cycle", "ktree", "planted", "gnp"}) {
            BenchSpec spec;
            spec.family = family;
            CHECK(bench_graph(spec, 20, 2).n() == 20);
        }
        BenchSpec bad;
        bad.family = "nope";
        CHECK_THROWS(bench_graph(bad, 5, 2));
    }
}
