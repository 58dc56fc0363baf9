#pragma once

#include <random>

#include "lrete/changeset.hpp"
#include "lrete/generator.hpp"
#include "lrete/localize.hpp"
#include "lrete/oracle.hpp"
#include "lrete/query.hpp"
#include "lrete/sat_delta.hpp"

namespace lrete::testing {

// ---------------------------------------------------------------------
// The running example: a project with two packages, each containing a
// class with a field; one package relevant. The interface vertex i1 and
// its edge appear in the extended-query variants.
// ---------------------------------------------------------------------

inline TypedGraph example_host(bool with_interface) {
    TypedGraph g(synthetic_type_graph());
    g.add_vertex("r1", "Proj");
    g.add_vertex("p1", "Pkg");
    g.add_vertex("c1", "Class");
    g.add_vertex("f1", "Field");
    g.add_vertex("p2", "Pkg");
    g.add_vertex("c2", "Class");
    g.add_vertex("f2", "Field");
    g.add_edge("pe1", "pe", "r1", "p1");
    g.add_edge("pe2", "pe", "r1", "p2");
    g.add_edge("ce1", "ce", "p1", "c1");
    g.add_edge("fe1", "fe", "c1", "f1");
    g.add_edge("ce2", "ce", "p2", "c2");
    g.add_edge("fe2", "fe", "c2", "f2");
    if (with_interface) {
        g.add_vertex("i1", "Intf");
        g.add_edge("ie1", "ie", "c1", "i1");
    }
    return g;
}

inline RelevantSubgraph relevant_vertices(std::initializer_list<Id> ids) {
    RelevantSubgraph r;
    for (const Id& id : ids) r.vertex_ids.insert(id);
    return r;
}

/// Path query: p:Pkg -ce-> c:Class -fe-> f:Field.
inline TypedGraph example_query_graph() {
    TypedGraph q(synthetic_type_graph());
    q.add_vertex("p", "Pkg");
    q.add_vertex("c", "Class");
    q.add_vertex("f", "Field");
    q.add_edge("qce", "ce", "p", "c");
    q.add_edge("qfe", "fe", "c", "f");
    return q;
}

/// Extended query: the path pattern plus a partial-anchor condition
/// requiring the class to be connected to an interface.
inline ExtendedQuery example_extended_query() {
    TypedGraph target(synthetic_type_graph());
    target.add_vertex("c", "Class");
    target.add_vertex("i", "Intf");
    target.add_edge("qie", "ie", "c", "i");

    Match anchor;
    anchor.map_vertex("c", "c");
    return {example_query_graph(),
            Condition::make_exists(std::move(anchor), std::move(target), Condition::make_true())};
}

inline Match match_of(std::initializer_list<std::pair<Id, Id>> vertices,
                      std::initializer_list<std::pair<Id, Id>> edges) {
    Match m;
    for (const auto& [q, h] : vertices) m.map_vertex(q, h);
    for (const auto& [q, h] : edges) m.map_edge(q, h);
    return m;
}

/// m1 of the running example.
inline Match example_m1() {
    return match_of({{"p", "p1"}, {"c", "c1"}, {"f", "f1"}}, {{"qce", "ce1"}, {"qfe", "fe1"}});
}

/// m2, the symmetric match in the irrelevant package.
inline Match example_m2() {
    return match_of({{"p", "p2"}, {"c", "c2"}, {"f", "f2"}}, {{"qce", "ce2"}, {"qfe", "fe2"}});
}

// ---------------------------------------------------------------------
// Randomized instances for the property suites.
// ---------------------------------------------------------------------

struct RandomInstance {
    TypedGraph host;
    RelevantSubgraph relevant;
    ExtendedQuery query;
};

using Rng = std::mt19937_64;

std::shared_ptr<const TypeGraph> random_type_graph(Rng& rng);
TypedGraph random_host(Rng& rng, std::shared_ptr<const TypeGraph> types, int max_vertices,
                       bool edge_dominated);
RelevantSubgraph random_relevant(Rng& rng, const TypedGraph& host);

/// Connected plain pattern with up to max_edges edges; biased toward
/// patterns extracted from the host so matches exist.
TypedGraph random_pattern(Rng& rng, const TypedGraph& host, int max_edges);

/// Random condition over the pattern with nesting depth at most 2.
ConditionPtr random_condition(Rng& rng, const TypedGraph& host, const TypedGraph& pattern,
                              int depth);

RandomInstance random_instance(Rng& rng, bool edge_dominated, bool with_condition);

/// Random changes applicable to the instance's host; ids never reused.
Changeset random_changes(Rng& rng, const TypedGraph& host, const RelevantSubgraph& relevant,
                         int max_ops, int tag);

/// Random subgraph-restricted modification: creations and deletions
/// confined to the relevant subgraphs.
struct RestrictedMod {
    GraphModification mod;
    RelevantSubgraph relevant_src;
    RelevantSubgraph relevant_tgt;
};
RestrictedMod random_restricted_modification(Rng& rng, const TypedGraph& host,
                                             const RelevantSubgraph& relevant, int tag);

} // namespace lrete::testing
