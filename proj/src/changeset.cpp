#include "lrete/changeset.hpp"

namespace lrete {

ChangeOp ChangeOp::add_vertex(Id id, Id type) {
    return {Kind::AddVertex, std::move(id), std::move(type), {}, {}};
}
ChangeOp ChangeOp::add_edge(Id id, Id type, Id src, Id tgt) {
    return {Kind::AddEdge, std::move(id), std::move(type), std::move(src), std::move(tgt)};
}
ChangeOp ChangeOp::remove_vertex(Id id) { return {Kind::RemoveVertex, std::move(id), {}, {}, {}}; }
ChangeOp ChangeOp::remove_edge(Id id) { return {Kind::RemoveEdge, std::move(id), {}, {}, {}}; }
ChangeOp ChangeOp::relevant_add(Id id) { return {Kind::RelevantAdd, std::move(id), {}, {}, {}}; }
ChangeOp ChangeOp::relevant_remove(Id id) {
    return {Kind::RelevantRemove, std::move(id), {}, {}, {}};
}

namespace {

void relevant_remove_vertex(const TypedGraph& host, RelevantSubgraph& relevant, const Id& v) {
    if (!relevant.vertex_ids.erase(v)) return;
    // Keep incidence closure: drop relevant edges touching the vertex.
    for (const Id& e : host.out_edges(v)) relevant.edge_ids.erase(e);
    for (const Id& e : host.in_edges(v)) relevant.edge_ids.erase(e);
}

} // namespace

void apply_changeset(TypedGraph& host, RelevantSubgraph& relevant, const Changeset& changes) {
    for (const ChangeOp& op : changes) {
        try {
            switch (op.kind) {
                case ChangeOp::Kind::AddVertex:
                    host.add_vertex(op.id, op.type);
                    break;
                case ChangeOp::Kind::AddEdge:
                    host.add_edge(op.id, op.type, op.src, op.tgt);
                    break;
                case ChangeOp::Kind::RemoveVertex:
                    relevant_remove_vertex(host, relevant, op.id);
                    host.remove_vertex(op.id);
                    break;
                case ChangeOp::Kind::RemoveEdge:
                    relevant.edge_ids.erase(op.id);
                    host.remove_edge(op.id);
                    break;
                case ChangeOp::Kind::RelevantAdd:
                    if (host.has_vertex(op.id)) {
                        relevant.vertex_ids.insert(op.id);
                    } else if (host.has_edge(op.id)) {
                        const EdgeRec& rec = host.edge(op.id);
                        if (!relevant.contains_vertex(rec.src) ||
                            !relevant.contains_vertex(rec.tgt))
                            fail(ErrorKind::MalformedDelta,
                                 "relevantAdd of edge " + op.id + " without relevant endpoints");
                        relevant.edge_ids.insert(op.id);
                    } else {
                        fail(ErrorKind::MalformedDelta, "relevantAdd of unknown element " + op.id);
                    }
                    break;
                case ChangeOp::Kind::RelevantRemove:
                    if (host.has_vertex(op.id)) {
                        relevant_remove_vertex(host, relevant, op.id);
                    } else if (host.has_edge(op.id)) {
                        relevant.edge_ids.erase(op.id);
                    } else {
                        fail(ErrorKind::MalformedDelta,
                             "relevantRemove of unknown element " + op.id);
                    }
                    break;
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::MalformedDelta) throw;
            fail(ErrorKind::MalformedDelta, std::string("bad change op on ") + op.id + ": " +
                                                e.what());
        }
    }
    relevant.validate(host);
}

ChangesetModification modification_from_changeset(const TypedGraph& source,
                                                  const RelevantSubgraph& relevant,
                                                  const Changeset& changes) {
    ChangesetModification out;
    out.modification.source = source;
    out.modification.target = source;
    out.relevant_target = relevant;
    apply_changeset(out.modification.target, out.relevant_target, changes);

    GraphModification& mod = out.modification;
    for (const auto& [v, t] : mod.source.vertices())
        if (!mod.target.has_vertex(v)) mod.deleted_vertices.insert(v);
    for (const auto& [e, rec] : mod.source.edges())
        if (!mod.target.has_edge(e)) mod.deleted_edges.insert(e);
    for (const auto& [v, t] : mod.target.vertices())
        if (!mod.source.has_vertex(v)) mod.created_vertices.insert(v);
    for (const auto& [e, rec] : mod.target.edges())
        if (!mod.source.has_edge(e)) mod.created_edges.insert(e);

    // Id-stable correspondence cannot express delete-then-recreate of
    // the same id within one modification.
    std::set<Id> removed_ids;
    for (const ChangeOp& op : changes) {
        switch (op.kind) {
            case ChangeOp::Kind::RemoveVertex:
            case ChangeOp::Kind::RemoveEdge:
                removed_ids.insert(op.id);
                break;
            case ChangeOp::Kind::AddVertex:
            case ChangeOp::Kind::AddEdge:
                if (removed_ids.count(op.id) && mod.source.has_element(op.id))
                    fail(ErrorKind::MalformedDelta,
                         "id deleted and re-created in one changeset: " + op.id);
                break;
            default:
                break;
        }
    }
    mod.validate();
    return out;
}

void apply_changes_incrementally(std::span<MsNode* const> order, TypedGraph& host,
                                 RelevantSubgraph& relevant, const Changeset& changes,
                                 MsConfiguration& config, const ExecutionTracer& tracer) {
    if (!changes.empty()) {
        apply_changeset(host, relevant, changes);
        config.note_host_changed();
    }
    execute_localized(order, host, relevant, config, tracer);
}

} // namespace lrete
