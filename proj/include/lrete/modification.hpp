#pragma once

#include <optional>
#include <set>

#include "lrete/match.hpp"
#include "lrete/typed_graph.hpp"

namespace lrete {

/// A graph modification as a span between source and target graph. The
/// correspondence between retained elements is id-equality, so retained
/// elements keep their ids, deleted ids never reappear in the target,
/// and created ids are fresh.
struct GraphModification {
    TypedGraph source;
    TypedGraph target;
    std::set<Id> deleted_vertices;
    std::set<Id> deleted_edges;
    std::set<Id> created_vertices;
    std::set<Id> created_edges;

    bool deletes(const Id& x) const {
        return deleted_vertices.count(x) > 0 || deleted_edges.count(x) > 0;
    }
    bool creates(const Id& x) const {
        return created_vertices.count(x) > 0 || created_edges.count(x) > 0;
    }

    /// Internal consistency: deletion/creation sets match the two
    /// graphs, retained elements agree in typing and structure, vertex
    /// deletions take their incident edges along.
    void validate() const;
};

/// Returns the modification's target; validates first.
TypedGraph apply_modification(const GraphModification& mod);

enum class TranslateDirection { ToSource, ToTarget };

/// Composes a total match through the modification correspondence.
/// Returns nullopt when any image element does not survive.
std::optional<Match> translate_match(const Match& m, const GraphModification& mod,
                                     TranslateDirection direction);

/// Whether the modification is subgraph-restricted for the given
/// relevant subgraphs: all changes confined to them, the outside parts
/// isomorphic under the correspondence, and the relevant subgraphs
/// mapped into each other.
bool is_subgraph_restricted(const GraphModification& mod, const RelevantSubgraph& relevant_src,
                            const RelevantSubgraph& relevant_tgt);

} // namespace lrete
