#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "lrete/bench.hpp"
#include "lrete/dot.hpp"
#include "lrete/json_io.hpp"
#include "lrete/localize.hpp"
#include "lrete/oracle.hpp"
#include "lrete/sat_delta.hpp"

namespace {

using namespace lrete;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

ExtendedQuery load_query(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_query(ref);
    return parse_query_json(read_file(ref));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

int cmd_run(const std::string& graph_path, const std::string& query_path,
            const std::string& engine, const std::string& out_path, bool trace) {
    GraphFile file = parse_graph_json(read_file(graph_path));
    ExtendedQuery query = load_query(query_path);
    std::vector<std::string> violations = validate_query(query);
    if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << "query: " << v << "\n";
        return kExitValidation;
    }

    if (engine == "standard") {
        ReteNet net = build_extended_net(query);
        Configuration config = execute_batch(net, file.graph);
        std::vector<Match> result(config.result(net.production).begin(),
                                  config.result(net.production).end());
        emit(matches_to_json(result), out_path);
        return kExitOk;
    }
    if (engine == "localized") {
        LocalizedPsiNet net = localize_psi(query);
        MsConfiguration config;
        ExecutionTracer tracer;
        if (trace) {
            tracer = [](const MsNode& n, std::size_t added, std::size_t removed) {
                std::cerr << "{\"node\":" << n.id << ",\"label\":\"" << n.label()
                          << "\",\"added\":" << added << ",\"removed\":" << removed << "}\n";
            };
        }
        execute_localized(net.order(), file.graph, file.relevant, config, tracer);
        emit(ms_results_to_json(config.result(net.production())), out_path);
        return kExitOk;
    }
    if (engine == "sat") {
        std::vector<Match> result = compute_sat_dependent(query, file.graph, file.relevant);
        emit(matches_to_json(result), out_path);
        return kExitOk;
    }
    std::cerr << "unknown engine: " << engine << "\n";
    return kExitUsage;
}

int cmd_diff(const std::string& graph_path, const std::string& changes_path,
             const std::string& query_path, const std::string& out_path) {
    GraphFile file = parse_graph_json(read_file(graph_path));
    Changeset changes = parse_changeset_json(read_file(changes_path));
    ExtendedQuery query = load_query(query_path);

    ChangesetModification cm = modification_from_changeset(file.graph, file.relevant, changes);
    ResultDelta delta =
        compute_result_delta(query, cm.modification, file.relevant, cm.relevant_target);
    emit(result_delta_to_json(delta), out_path);
    return kExitOk;
}

int cmd_validate(const std::vector<std::string>& graphs, const std::vector<std::string>& queries,
                 const std::vector<std::string>& changesets) {
    bool ok = true;
    for (const std::string& path : graphs) {
        try {
            GraphFile file = parse_graph_json(read_file(path));
            if (!file.graph.index_coherent()) {
                std::cerr << path << ": adjacency index incoherent\n";
                ok = false;
            } else {
                std::cout << path << ": ok (" << file.graph.vertex_count() << " vertices, "
                          << file.graph.edge_count() << " edges)\n";
            }
        } catch (const Error& e) {
            std::cerr << path << ": " << e.what() << "\n";
            ok = false;
        }
    }
    for (const std::string& path : queries) {
        try {
            ExtendedQuery q = load_query(path);
            std::vector<std::string> violations = validate_query(q);
            for (const std::string& v : violations) std::cerr << path << ": " << v << "\n";
            if (violations.empty()) std::cout << path << ": ok\n";
            ok = ok && violations.empty();
        } catch (const Error& e) {
            std::cerr << path << ": " << e.what() << "\n";
            ok = false;
        }
    }
    for (const std::string& path : changesets) {
        try {
            parse_changeset_json(read_file(path));
            std::cout << path << ": ok\n";
        } catch (const Error& e) {
            std::cerr << path << ": " << e.what() << "\n";
            ok = false;
        }
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_dump_net(const std::string& query_path, const std::string& engine,
                 const std::string& graph_path, const std::string& out_path) {
    ExtendedQuery query = load_query(query_path);
    std::optional<GraphFile> file;
    if (!graph_path.empty()) file = parse_graph_json(read_file(graph_path));

    if (engine == "standard") {
        ReteNet net = build_extended_net(query);
        emit(dot_dump(net), out_path);
        return kExitOk;
    }
    auto dump_ms = [&](const std::shared_ptr<MsNet>& arena, std::span<MsNode* const> order) {
        if (file) {
            MsConfiguration config;
            execute_localized(order, file->graph, file->relevant, config);
            emit(dot_dump(*arena, &config), out_path);
        } else {
            emit(dot_dump(*arena), out_path);
        }
    };
    if (engine == "localized") {
        LocalizedPsiNet net = localize_psi(query);
        dump_ms(net.arena, net.order());
        return kExitOk;
    }
    if (engine == "sat") {
        SatNet net = localize_sat(query);
        dump_ms(net.arena, net.order());
        return kExitOk;
    }
    std::cerr << "unknown engine: " << engine << "\n";
    return kExitUsage;
}

int cmd_generate(int packages, int classes, int fields, int relevant_package,
                 std::uint64_t seed, const std::string& out_path) {
    SynthParams params;
    params.package_count = packages;
    params.classes_per_package = classes;
    params.fields_per_class = fields;
    params.relevant_package = relevant_package;
    params.seed = seed;
    SynthModel model = generate_synthetic_model(params);
    emit(graph_to_json(model.host, model.relevant), out_path);
    return kExitOk;
}

int cmd_bench(const std::string& scenario_path, const std::string& sizes_csv,
              const std::string& out_path, bool deterministic) {
    BenchScenario scenario;
    if (!scenario_path.empty()) scenario = parse_scenario_json(read_file(scenario_path));
    if (!sizes_csv.empty()) {
        scenario.sizes.clear();
        std::stringstream ss(sizes_csv);
        std::string item;
        while (std::getline(ss, item, ',')) scenario.sizes.push_back(std::stoi(item));
    }
    scenario.deterministic_output = scenario.deterministic_output || deterministic;
    ExtendedQuery query = load_query(scenario.query);
    RunReport report = run_scenario(scenario, query);
    emit(report_to_csv(report), out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"incremental graph queries with localized RETE execution"};
    app.require_subcommand(1);

    std::string graph_path, query_path, changes_path, out_path, engine = "localized";
    std::string scenario_path, sizes_csv;
    bool trace = false, deterministic = false;
    std::vector<std::string> v_graphs, v_queries, v_changesets;
    int packages = 1, classes = 10, fields = 10, relevant_package = 0;
    std::uint64_t seed = 1;

    CLI::App* run = app.add_subcommand("run", "execute a query over a graph");
    run->add_option("--graph", graph_path)->required();
    run->add_option("--query", query_path)->required();
    run->add_option("--engine", engine)->check(CLI::IsMember({"standard", "localized", "sat"}));
    run->add_option("--out", out_path);
    run->add_flag("--trace", trace, "log node executions as JSON lines on stderr");

    CLI::App* diff = app.add_subcommand("diff", "localized result change detection");
    diff->add_option("--graph", graph_path)->required();
    diff->add_option("--changes", changes_path)->required();
    diff->add_option("--query", query_path)->required();
    diff->add_option("--out", out_path);

    CLI::App* validate = app.add_subcommand("validate", "validate input files");
    validate->add_option("--graph", v_graphs);
    validate->add_option("--query", v_queries);
    validate->add_option("--changes", v_changesets);

    CLI::App* dump = app.add_subcommand("dump-net", "dump a net as graphviz");
    dump->add_option("--query", query_path)->required();
    dump->add_option("--engine", engine)
        ->check(CLI::IsMember({"standard", "localized", "sat"}));
    dump->add_option("--graph", graph_path, "execute over this graph and annotate tuples");
    dump->add_option("--out", out_path);

    CLI::App* generate = app.add_subcommand("generate", "generate a synthetic model");
    generate->add_option("--packages", packages);
    generate->add_option("--classes", classes);
    generate->add_option("--fields", fields);
    generate->add_option("--relevant-package", relevant_package);
    generate->add_option("--seed", seed);
    generate->add_option("--out", out_path);

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark scenario");
    bench->add_option("--scenario", scenario_path);
    bench->add_option("--sizes", sizes_csv, "comma-separated package counts");
    bench->add_option("--out", out_path);
    bench->add_flag("--deterministic", deterministic, "zero timings for golden files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\n";
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(graph_path, query_path, engine, out_path, trace);
        if (diff->parsed()) return cmd_diff(graph_path, changes_path, query_path, out_path);
        if (validate->parsed()) return cmd_validate(v_graphs, v_queries, v_changesets);
        if (dump->parsed()) return cmd_dump_net(query_path, engine, graph_path, out_path);
        if (generate->parsed())
            return cmd_generate(packages, classes, fields, relevant_package, seed, out_path);
        if (bench->parsed()) return cmd_bench(scenario_path, sizes_csv, out_path, deterministic);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Io ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
