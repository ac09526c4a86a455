// sclub: command-line front end.
//
//   sclub solve graph.gr --s 2 --k 3 [--td graph.td] [--certificate] [--json]
//   sclub generate --n 40 --d 6 --s 2 --noise 5 --seed 7 --out inst
//   sclub bench --family path --n 1000,2000,4000 --s 3
//   sclub td graph.gr [--heuristic min-degree]

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "sclub/cli.hpp"
#include "sclub/generate.hpp"
#include "sclub/io.hpp"
#include "sclub/treedec.hpp"

namespace {

int write_generated(const sclub::GeneratedInstance& inst, const std::string& prefix) {
    if (prefix.empty()) {
        sclub::write_graph(std::cout, inst.graph);
        return 0;
    }
    for (const char* ext : {".gr", ".td", ".partition"}) {
        std::ofstream out(prefix + ext);
        if (!out) {
            std::cerr << "error: cannot write " << prefix << ext << '\n';
            return 2;
        }
        const std::string e = ext;
        if (e == ".gr") sclub::write_graph(out, inst.graph);
        if (e == ".td") sclub::write_td(out, inst.decomposition, inst.graph.n());
        if (e == ".partition") sclub::write_partition(out, inst.planted);
    }
    std::cout << "noise " << inst.noise << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"s-club edge deletion solver"};
    app.require_subcommand(1);

    // solve
    sclub::RunConfig config;
    std::string graph_path, td_path, partition_path, mode_name;
    int k = -1;
    int threads = 0;
    bool json = false;
    auto* solve = app.add_subcommand("solve", "decide, optimize, brute-force or check one instance");
    solve->add_option("graph", graph_path, ".gr graph file")->required();
    solve->add_option("--s", config.s, "distance bound (>= 2)")->required();
    solve->add_option("--k", k, "deletion budget");
    solve->add_flag("--optimize", config.optimize, "report the minimum number of deletions");
    solve->add_option("--td", td_path, ".td decomposition (default: min-fill heuristic)");
    solve->add_option("--mode", mode_name, "decide | optimize | oracle | check")
        ->check(CLI::IsMember({"decide", "optimize", "oracle", "check"}));
    solve->add_option("--partition", partition_path, ".partition file for check mode");
    solve->add_flag("--certificate", config.certificate, "reconstruct and print a solution");
    solve->add_flag("--shadow", config.shadow, "re-derive every record from explicit clusters (slow)");
    solve->add_option("--threads", threads, "worker threads (default: SCLUB_THREADS or 1)");
    solve->add_option("--seed", config.seed, "recorded in the report");
    solve->add_flag("--json", json, "machine-readable report");
    solve->add_flag("--trace", config.trace, "per-bag JSON lines on stderr");

    // generate
    int gen_n = 20, gen_d = 4, gen_s = 2, gen_noise = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "planted instance: d s-clubs plus noise edges");
    generate->add_option("--n", gen_n, "vertices");
    generate->add_option("--d", gen_d, "planted blocks");
    generate->add_option("--s", gen_s, "distance bound of the planted blocks");
    generate->add_option("--noise", gen_noise, "inter-block edges");
    generate->add_option("--seed", gen_seed, "random seed");
    generate->add_option("--out", gen_out, "write <out>.gr, <out>.td, <out>.partition (default: graph on stdout)");

    // bench
    sclub::BenchSpec spec;
    bool bench_json = false;
    auto* bench = app.add_subcommand("bench", "timing table over an instance family");
    bench->add_option("--family", spec.family, "path | cycle | ktree | planted | gnp")
        ->check(CLI::IsMember({"path", "cycle", "ktree", "planted", "gnp"}));
    bench->add_option("--n", spec.sizes, "sizes")->delimiter(',');
    bench->add_option("--s", spec.s_values, "distance bounds")->delimiter(',');
    bench->add_option("--width", spec.width, "k-tree width");
    bench->add_option("--p", spec.p, "edge probability for gnp");
    bench->add_option("--clusters", spec.clusters, "planted blocks (default n/5)");
    bench->add_option("--noise", spec.noise, "planted noise edges (default n/5)");
    bench->add_option("--seed", spec.seed, "random seed");
    bench->add_option("--threads", spec.threads, "worker threads");
    bench->add_option("--repeat", spec.repeat, "repetitions; the fastest is kept");
    bench->add_flag("--json", bench_json, "one JSON object per row instead of a table");

    // td
    std::string td_graph, heuristic = "min-fill";
    auto* td = app.add_subcommand("td", "write a heuristic tree decomposition");
    td->add_option("graph", td_graph, ".gr graph file")->required();
    td->add_option("--heuristic", heuristic, "min-fill | min-degree")
        ->check(CLI::IsMember({"min-fill", "min-degree"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (solve->parsed()) {
        config.graph = graph_path;
        if (!td_path.empty()) config.decomposition = td_path;
        if (!partition_path.empty()) config.partition = partition_path;
        if (!mode_name.empty()) config.mode = sclub::parse_mode(mode_name);
        if (solve->count("--k")) config.k = k;
        if (solve->count("--threads")) config.threads = threads;
        config.format = json ? sclub::OutputFormat::Json : sclub::OutputFormat::Text;
        return sclub::run_cli(config, std::cout, std::cerr);
    }

    try {
        if (generate->parsed())
            return write_generated(sclub::generate_planted(gen_n, gen_d, gen_s, gen_noise, gen_seed), gen_out);
        if (bench->parsed()) {
            if (!bench_json) sclub::print_bench_header(std::cout);
            sclub::run_bench(spec, [&](const sclub::BenchRow& row) {
                if (bench_json)
                    std::cout << sclub::bench_row_json(row) << '\n';
                else
                    sclub::print_bench_row(std::cout, row);
                std::cout.flush();
            });
            return 0;
        }
        if (td->parsed()) {
            const auto g = sclub::read_graph(td_graph);
            const auto h = heuristic == "min-degree" ? sclub::Heuristic::MinDegree : sclub::Heuristic::MinFill;
            sclub::write_td(std::cout, sclub::heuristic_decomposition(g, h), g.n());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
