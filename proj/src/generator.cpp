#include "lrete/generator.hpp"

#include <random>

namespace lrete {

std::shared_ptr<const TypeGraph> synthetic_type_graph() {
    auto types = std::make_shared<TypeGraph>();
    types->vertex_types = {"Proj", "Pkg", "Class", "Field", "Intf"};
    types->edge_types["pe"] = {"Proj", "Pkg"};
    types->edge_types["ce"] = {"Pkg", "Class"};
    types->edge_types["fe"] = {"Class", "Field"};
    types->edge_types["re"] = {"Field", "Class"};
    types->edge_types["ie"] = {"Class", "Intf"};
    return types;
}

namespace {

std::string pkg_id(int i) { return "p" + std::to_string(i); }
std::string class_id(int i, int j) { return "c" + std::to_string(i) + "_" + std::to_string(j); }
std::string field_id(int i, int j, int k) {
    return "f" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

void validate_params(const SynthParams& p) {
    if (p.package_count <= 0 || p.classes_per_package <= 0 || p.fields_per_class <= 0)
        fail(ErrorKind::PreconditionViolation, "synthetic generator parameters must be positive");
    if (p.relevant_package < 0 || p.relevant_package >= p.package_count)
        fail(ErrorKind::PreconditionViolation, "relevant package index out of range");
}

} // namespace

SynthModel generate_synthetic_model(const SynthParams& params) {
    validate_params(params);
    SynthModel model;
    model.host = TypedGraph(synthetic_type_graph());
    TypedGraph& g = model.host;

    g.add_vertex("r0", "Proj");
    for (int i = 0; i < params.package_count; ++i) {
        g.add_vertex(pkg_id(i), "Pkg");
        g.add_edge("pe" + std::to_string(i), "pe", "r0", pkg_id(i));
        for (int j = 0; j < params.classes_per_package; ++j) {
            g.add_vertex(class_id(i, j), "Class");
            g.add_edge("ce" + std::to_string(i) + "_" + std::to_string(j), "ce", pkg_id(i),
                       class_id(i, j));
            for (int k = 0; k < params.fields_per_class; ++k) {
                g.add_vertex(field_id(i, j, k), "Field");
                g.add_edge("fe" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                               std::to_string(k),
                           "fe", class_id(i, j), field_id(i, j, k));
            }
        }
    }

    // Reference edges. The designated package wires its fields to its
    // own classes by a fixed stride so its contents are identical for
    // every model size; other packages draw targets from the seeded
    // PRNG over all classes outside the designated package.
    std::mt19937_64 rng(params.seed);
    const int rp = params.relevant_package;
    const int n = params.classes_per_package;
    std::vector<std::pair<int, int>> outside_classes;
    for (int i = 0; i < params.package_count; ++i) {
        if (i == rp) continue;
        for (int j = 0; j < n; ++j) outside_classes.emplace_back(i, j);
    }

    for (int i = 0; i < params.package_count; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < params.fields_per_class; ++k) {
                Id target;
                if (i == rp) {
                    int offset = n > 1 ? 1 + (k % (n - 1)) : 0;
                    target = class_id(rp, (j + offset) % n);
                } else {
                    std::uniform_int_distribution<std::size_t> pick(0,
                                                                    outside_classes.size() - 1);
                    auto [ti, tj] = outside_classes[pick(rng)];
                    target = class_id(ti, tj);
                }
                g.add_edge("re" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                               std::to_string(k),
                           "re", field_id(i, j, k), target);
            }
        }
    }

    // Relevant subgraph: the designated package with its contents and
    // the edges among them.
    RelevantSubgraph& rel = model.relevant;
    rel.vertex_ids.insert(pkg_id(rp));
    for (int j = 0; j < n; ++j) {
        rel.vertex_ids.insert(class_id(rp, j));
        for (int k = 0; k < params.fields_per_class; ++k)
            rel.vertex_ids.insert(field_id(rp, j, k));
    }
    for (const auto& [e, rec] : g.edges())
        if (rel.contains_vertex(rec.src) && rel.contains_vertex(rec.tgt)) rel.edge_ids.insert(e);
    rel.validate(g);
    return model;
}

Changeset synthetic_update_step(const SynthParams& params, int step) {
    validate_params(params);
    const int rp = params.relevant_package;
    const std::string suffix = std::to_string(rp) + "_x" + std::to_string(step);
    const Id new_class = "c" + suffix;

    Changeset changes;
    changes.push_back(ChangeOp::add_vertex(new_class, "Class"));
    changes.push_back(ChangeOp::relevant_add(new_class));
    changes.push_back(ChangeOp::add_edge("ce" + suffix, "ce", pkg_id(rp), new_class));
    changes.push_back(ChangeOp::relevant_add("ce" + suffix));
    for (int k = 0; k < params.fields_per_class; ++k) {
        const std::string fsuffix = suffix + "_" + std::to_string(k);
        changes.push_back(ChangeOp::add_vertex("f" + fsuffix, "Field"));
        changes.push_back(ChangeOp::relevant_add("f" + fsuffix));
        changes.push_back(ChangeOp::add_edge("fe" + fsuffix, "fe", new_class, "f" + fsuffix));
        changes.push_back(ChangeOp::relevant_add("fe" + fsuffix));
        changes.push_back(ChangeOp::add_edge("re" + fsuffix, "re", "f" + fsuffix,
                                             class_id(rp, k % params.classes_per_package)));
        changes.push_back(ChangeOp::relevant_add("re" + fsuffix));
    }
    return changes;
}

ExtendedQuery synthetic_path_query() {
    auto types = synthetic_type_graph();
    TypedGraph q(types);
    q.add_vertex("p", "Pkg");
    q.add_vertex("c1", "Class");
    q.add_vertex("f1", "Field");
    q.add_vertex("c2", "Class");
    q.add_vertex("f2", "Field");
    q.add_edge("qce", "ce", "p", "c1");
    q.add_edge("qfe1", "fe", "c1", "f1");
    q.add_edge("qre", "re", "f1", "c2");
    q.add_edge("qfe2", "fe", "c2", "f2");
    return {std::move(q), Condition::make_true()};
}

namespace {

ExtendedQuery class_query_with_field_condition(bool negated) {
    auto types = synthetic_type_graph();
    TypedGraph q(types);
    q.add_vertex("p", "Pkg");
    q.add_vertex("c", "Class");
    q.add_edge("qce", "ce", "p", "c");

    TypedGraph target(types);
    target.add_vertex("c", "Class");
    target.add_vertex("f", "Field");
    target.add_edge("qfe", "fe", "c", "f");

    Match anchor;
    anchor.map_vertex("c", "c");
    ConditionPtr exists =
        Condition::make_exists(std::move(anchor), std::move(target), Condition::make_true());
    return {std::move(q), negated ? Condition::make_not(exists) : exists};
}

} // namespace

ExtendedQuery synthetic_class_with_field_query() { return class_query_with_field_condition(false); }

ExtendedQuery synthetic_class_without_field_query() {
    return class_query_with_field_condition(true);
}

ExtendedQuery builtin_query(const std::string& name) {
    if (name == "builtin:path4") return synthetic_path_query();
    if (name == "builtin:class_with_field") return synthetic_class_with_field_query();
    if (name == "builtin:class_without_field") return synthetic_class_without_field_query();
    fail(ErrorKind::UnsupportedQuery, "unknown builtin query: " + name);
}

} // namespace lrete
