#include "lrete/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lrete/localize.hpp"
#include "lrete/oracle.hpp"
#include "lrete/sat_delta.hpp"

namespace lrete {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

struct RepMeasurement {
    double initial_ms = 0.0;
    double update_ms = 0.0;  // mean per step
    std::size_t initial_tuples = 0;
    std::size_t initial_effective = 0;
    std::size_t final_tuples = 0;
    std::size_t final_effective = 0;
    std::size_t result_count = 0;
    std::string checks = "skipped";
};

std::size_t standard_total_tuples(const ReteNet& net, const Configuration& c) {
    std::size_t total = 0;
    for (const ReteNode& n : net.nodes) {
        auto it = c.sets.find(&n);
        if (it != c.sets.end()) total += it->second.size();
    }
    return total;
}

RepMeasurement run_standard_rep(const BenchScenario& scenario, const SynthParams& params,
                                const ExtendedQuery& query) {
    RepMeasurement m;
    SynthModel model = generate_synthetic_model(params);
    ReteNet net = build_extended_net(query);

    auto start = Clock::now();
    Configuration config = execute_batch(net, model.host);
    m.initial_ms = ms_since(start);
    m.initial_tuples = standard_total_tuples(net, config);
    m.initial_effective = effective_size(net, config);

    // Batch-only baseline: every update step re-executes from scratch.
    std::vector<double> step_times;
    for (int step = 0; step < scenario.change_steps; ++step) {
        Changeset changes = synthetic_update_step(params, step);
        apply_changeset(model.host, model.relevant, changes);
        auto t = Clock::now();
        config = execute_batch(net, model.host);
        step_times.push_back(ms_since(t));
    }
    m.update_ms = step_times.empty()
                      ? 0.0
                      : std::accumulate(step_times.begin(), step_times.end(), 0.0) /
                            static_cast<double>(step_times.size());
    m.final_tuples = standard_total_tuples(net, config);
    m.final_effective = effective_size(net, config);
    m.result_count = config.result(net.production).size();

    if (model.host.vertex_count() <= scenario.oracle_vertex_limit) {
        std::vector<Match> result(config.result(net.production).begin(),
                                  config.result(net.production).end());
        auto report = oracle::check_correctness(result, query, model.host,
                                                RelevantSubgraph{});
        // Global results: correctness against the oracle's satisfying set.
        std::set<Match> satisfying;
        for (const Match& om : oracle::enumerate_matches(query.pattern, model.host))
            if (oracle::eval_condition(om, query.pattern, query.condition, model.host))
                satisfying.insert(om);
        bool ok = report.ok() && satisfying.size() == result.size();
        m.checks = ok ? "ok" : "FAIL";
    }
    return m;
}

RepMeasurement run_localized_rep(const BenchScenario& scenario, const SynthParams& params,
                                 const ExtendedQuery& query) {
    RepMeasurement m;
    SynthModel model = generate_synthetic_model(params);
    LocalizedPsiNet net = localize_psi(query);
    std::vector<const MsNode*> nodes = net.all_nodes();

    MsConfiguration config;
    auto start = Clock::now();
    execute_localized(net.order(), model.host, model.relevant, config);
    m.initial_ms = ms_since(start);
    m.initial_tuples = ms_total_tuples(nodes, config);
    m.initial_effective = ms_effective_size(nodes, config);

    std::vector<double> step_times;
    for (int step = 0; step < scenario.change_steps; ++step) {
        Changeset changes = synthetic_update_step(params, step);
        auto t = Clock::now();
        apply_changes_incrementally(net.order(), model.host, model.relevant, changes, config);
        step_times.push_back(ms_since(t));
    }
    m.update_ms = step_times.empty()
                      ? 0.0
                      : std::accumulate(step_times.begin(), step_times.end(), 0.0) /
                            static_cast<double>(step_times.size());
    m.final_tuples = ms_total_tuples(nodes, config);
    m.final_effective = ms_effective_size(nodes, config);

    std::size_t relevant_results = 0;
    for (const auto& [match, phi] : config.result(net.production()))
        if (phi == kInfinity) ++relevant_results;
    m.result_count = relevant_results;

    if (model.host.vertex_count() <= scenario.oracle_vertex_limit) {
        std::vector<Match> stripped = stripped_result_set(net.production(), config);
        auto report = oracle::check_correctness(stripped, query, model.host, model.relevant);
        m.checks = report.ok() ? "ok" : "FAIL";
    }
    return m;
}

RepMeasurement run_delta_rep(const BenchScenario& scenario, const SynthParams& params,
                             const ExtendedQuery& query) {
    RepMeasurement m;
    SynthModel model = generate_synthetic_model(params);

    std::vector<double> step_times;
    bool all_ok = true;
    bool any_checked = false;
    for (int step = 0; step < scenario.change_steps; ++step) {
        Changeset changes = synthetic_update_step(params, step);
        ChangesetModification cm =
            modification_from_changeset(model.host, model.relevant, changes);

        auto t = Clock::now();
        DiffHarness harness(query, cm.modification, model.relevant, cm.relevant_target);
        ResultDelta delta = harness.compute();
        double elapsed = ms_since(t);
        step_times.push_back(elapsed);

        std::size_t harness_tuples = 0;
        for (const auto& [node, entry] : harness.config().entries)
            harness_tuples += entry.set.size();
        if (step == 0) {
            m.initial_ms = elapsed;
            m.initial_tuples = harness_tuples;
        }
        m.final_effective = harness_tuples;

        if (model.host.vertex_count() <= scenario.oracle_vertex_limit) {
            any_checked = true;
            ResultDelta expected = oracle::recompute_delta(query, cm.modification);
            auto as_set = [](const std::vector<Match>& v) {
                return std::set<Match>(v.begin(), v.end());
            };
            if (as_set(delta.removed) != as_set(expected.removed) ||
                as_set(delta.added) != as_set(expected.added))
                all_ok = false;
        }

        apply_changeset(model.host, model.relevant, changes);
        m.final_tuples = delta.added.size() + delta.removed.size();
    }
    m.update_ms = step_times.empty()
                      ? 0.0
                      : std::accumulate(step_times.begin(), step_times.end(), 0.0) /
                            static_cast<double>(step_times.size());
    m.result_count = m.final_tuples;
    if (any_checked) m.checks = all_ok ? "ok" : "FAIL";
    return m;
}

} // namespace

const PhaseReport* RunReport::find(int size, const std::string& engine,
                                   const std::string& phase) const {
    for (const PhaseReport& row : rows)
        if (row.size == size && row.engine == engine && row.phase == phase) return &row;
    return nullptr;
}

RunReport run_scenario(const BenchScenario& scenario, const ExtendedQuery& query) {
    RunReport report;
    for (int size : scenario.sizes) {
        SynthParams params;
        params.package_count = size;
        params.classes_per_package = scenario.classes_per_package;
        params.fields_per_class = scenario.fields_per_class;
        params.relevant_package = scenario.relevant_package;
        params.seed = scenario.seed;

        for (const std::string& engine : scenario.engines) {
            std::vector<RepMeasurement> reps;
            int total_runs = std::max(1, scenario.repetitions) + 1;  // first run warms up
            for (int r = 0; r < total_runs; ++r) {
                RepMeasurement m;
                if (engine == "standard")
                    m = run_standard_rep(scenario, params, query);
                else if (engine == "localized")
                    m = run_localized_rep(scenario, params, query);
                else if (engine == "delta")
                    m = run_delta_rep(scenario, params, query);
                else
                    fail(ErrorKind::PreconditionViolation, "unknown engine: " + engine);
                if (r > 0 || total_runs == 1) reps.push_back(std::move(m));
            }

            auto times = [&](auto&& get) {
                std::vector<double> out;
                for (const RepMeasurement& m : reps) out.push_back(get(m));
                return median(std::move(out));
            };
            const RepMeasurement& last = reps.back();

            double t_initial = scenario.deterministic_output
                                   ? 0.0
                                   : times([](const RepMeasurement& m) { return m.initial_ms; });
            double t_update = scenario.deterministic_output
                                  ? 0.0
                                  : times([](const RepMeasurement& m) { return m.update_ms; });

            report.rows.push_back({scenario.name, size, engine, "initial", t_initial,
                                   last.initial_tuples, last.initial_effective, last.checks});
            report.rows.push_back({scenario.name, size, engine, "update", t_update,
                                   last.final_tuples, last.final_effective, last.checks});
            report.rows.push_back({scenario.name, size, engine, "result", 0.0, last.result_count,
                                   0, last.checks});
        }
    }
    return report;
}

std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "scenario,size,engine,phase,time_ms,tuples,effective_size,checks_passed\n";
    for (const PhaseReport& row : report.rows) {
        out << row.scenario << "," << row.size << "," << row.engine << "," << row.phase << ","
            << row.time_ms << "," << row.tuples << "," << row.effective_size << "," << row.checks
            << "\n";
    }
    return out.str();
}

BenchScenario parse_scenario_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Io, "invalid scenario JSON");
    BenchScenario s;
    s.name = j.value("name", s.name);
    if (j.contains("sizes")) s.sizes = j.at("sizes").get<std::vector<int>>();
    s.classes_per_package = j.value("classesPerPackage", s.classes_per_package);
    s.fields_per_class = j.value("fieldsPerClass", s.fields_per_class);
    s.relevant_package = j.value("relevantPackage", s.relevant_package);
    s.seed = j.value("seed", s.seed);
    s.query = j.value("query", s.query);
    s.change_steps = j.value("changeSteps", s.change_steps);
    s.repetitions = j.value("repetitions", s.repetitions);
    if (j.contains("engines")) s.engines = j.at("engines").get<std::vector<std::string>>();
    return s;
}

} // namespace lrete
