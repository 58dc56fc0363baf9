#pragma once

#include <cstdint>

#include "lrete/changeset.hpp"
#include "lrete/query.hpp"

namespace lrete {

/// Parameters for the synthetic abstract-syntax-graph generator: a
/// project root, packages containing classes, classes containing fields,
/// fields referencing classes. References out of the designated package
/// stay inside it so its neighborhood is identical for every model size;
/// other packages draw reference targets from a seeded PRNG.
struct SynthParams {
    int package_count = 1;
    int classes_per_package = 10;
    int fields_per_class = 10;
    int relevant_package = 0;
    std::uint64_t seed = 1;
};

struct SynthModel {
    TypedGraph host;
    RelevantSubgraph relevant;
};

std::shared_ptr<const TypeGraph> synthetic_type_graph();

SynthModel generate_synthetic_model(const SynthParams& params);

/// One update step: a new class in the designated package with
/// `fields_per_class` fields referencing existing classes of the same
/// package. Deterministic per step index; all changes stay inside the
/// relevant subgraph.
Changeset synthetic_update_step(const SynthParams& params, int step);

/// The path query over the synthetic schema: package containing a class
/// whose field references a class with another field.
ExtendedQuery synthetic_path_query();

/// Extended query: package containing a class that has some field
/// (existential condition over the class).
ExtendedQuery synthetic_class_with_field_query();

/// Extended query: package containing a class without any field.
ExtendedQuery synthetic_class_without_field_query();

/// Resolves builtin query names ("builtin:path4", "builtin:class_with_field",
/// "builtin:class_without_field").
ExtendedQuery builtin_query(const std::string& name);

} // namespace lrete
