#pragma once

#include "lrete/modification.hpp"
#include "lrete/ms_rete.hpp"

namespace lrete {

/// One atomic host-graph or relevant-subgraph change.
struct ChangeOp {
    enum class Kind { AddVertex, AddEdge, RemoveVertex, RemoveEdge, RelevantAdd, RelevantRemove };

    Kind kind = Kind::AddVertex;
    Id id;
    Id type;  // AddVertex / AddEdge
    Id src;   // AddEdge
    Id tgt;   // AddEdge

    static ChangeOp add_vertex(Id id, Id type);
    static ChangeOp add_edge(Id id, Id type, Id src, Id tgt);
    static ChangeOp remove_vertex(Id id);
    static ChangeOp remove_edge(Id id);
    static ChangeOp relevant_add(Id id);
    static ChangeOp relevant_remove(Id id);
};

using Changeset = std::vector<ChangeOp>;

/// Applies the ops in order. Vertex removal cascades to incident edges;
/// removal of relevant elements keeps the relevant subgraph
/// incidence-closed. Throws MalformedDelta on unknown ids or ops that
/// would break closure.
void apply_changeset(TypedGraph& host, RelevantSubgraph& relevant, const Changeset& changes);

/// Span view of a changeset applied to a snapshot of the source: the
/// target graph plus deletion/creation sets with id-stable
/// correspondence, and the target-side relevant subgraph.
struct ChangesetModification {
    GraphModification modification;
    RelevantSubgraph relevant_target;
};

ChangesetModification modification_from_changeset(const TypedGraph& source,
                                                  const RelevantSubgraph& relevant,
                                                  const Changeset& changes);

/// Applies the changes to the host and relevant subgraph, then
/// re-executes the order from the retained configuration. The resulting
/// per-node result sets equal a from-scratch execution over the changed
/// state; unaffected subnets are skipped.
void apply_changes_incrementally(std::span<MsNode* const> order, TypedGraph& host,
                                 RelevantSubgraph& relevant, const Changeset& changes,
                                 MsConfiguration& config, const ExecutionTracer& tracer = nullptr);

} // namespace lrete
