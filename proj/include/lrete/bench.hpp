#pragma once

#include <string>
#include <vector>

#include "lrete/generator.hpp"

namespace lrete {

/// A benchmark scenario over the synthetic model family: model sizes in
/// packages, the query to run, engines to compare, and the number of
/// update steps applied after the initial execution.
struct BenchScenario {
    std::string name = "synthetic";
    std::vector<int> sizes = {1, 10, 100};
    int classes_per_package = 10;
    int fields_per_class = 10;
    int relevant_package = 0;
    std::uint64_t seed = 1;
    std::string query = "builtin:path4";
    int change_steps = 10;
    int repetitions = 5;
    std::vector<std::string> engines = {"standard", "localized"};
    bool deterministic_output = false;  // zero out timings for golden files

    /// Above this many host vertices the oracle checks are skipped.
    std::size_t oracle_vertex_limit = 60;
};

struct PhaseReport {
    std::string scenario;
    int size = 0;
    std::string engine;
    std::string phase;
    double time_ms = 0.0;
    std::size_t tuples = 0;
    std::size_t effective_size = 0;
    std::string checks = "skipped";
};

struct RunReport {
    std::vector<PhaseReport> rows;

    const PhaseReport* find(int size, const std::string& engine, const std::string& phase) const;
};

RunReport run_scenario(const BenchScenario& scenario, const ExtendedQuery& query);

std::string report_to_csv(const RunReport& report);

BenchScenario parse_scenario_json(const std::string& text);

} // namespace lrete
