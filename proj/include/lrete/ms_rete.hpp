#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "lrete/modification.hpp"
#include "lrete/rete.hpp"

namespace lrete {

/// Marking of a match: a natural number or infinity. Infinity marks
/// matches that touch the relevant subgraph; finite values encode up to
/// which join-tree height complementation is requested.
using Marking = std::uint64_t;
inline constexpr Marking kInfinity = std::numeric_limits<Marking>::max();

std::string marking_to_string(Marking phi);

/// Node of a marking-sensitive RETE net.
struct MsNode {
    enum class Kind {
        VertexInput,
        ForwardNav,
        BackwardNav,
        Join,
        Union,
        Projection,
        MarkAssign,
        MarkFilter,
        SemiJoin,
        AntiJoin,
        Translate,
        Dummy,
    };

    Kind kind = Kind::Dummy;
    int id = -1;
    TypedGraph query;
    std::vector<MsNode*> deps;  // joins: [left, right]

    // VertexInput / navigation: query element ids. Navigation nodes seed
    // from the dependency's single-vertex matches: forward from qv,
    // backward from qw.
    Id qv, qe, qw;

    // Projection to a single vertex, with an optional rename between
    // query spaces (proj_in in the dependency's query, proj_out in this
    // node's query).
    Id proj_in, proj_out;

    Marking assign_value = 0;      // MarkAssign
    Marking filter_threshold = 0;  // MarkFilter keeps marks strictly above

    // Join / SemiJoin(Overlap) / AntiJoin.
    std::vector<Id> overlap_vertices;
    std::vector<Id> overlap_edges;
    SemiVariant semi_variant = SemiVariant::Overlap;
    Match anchor;

    // Translate: composes matches through the modification.
    const GraphModification* modification = nullptr;
    TranslateDirection direction = TranslateDirection::ToSource;

    /// Height carried over from the standard net the node derives from;
    /// structural, fixed at construction.
    int height = 0;

    std::string label() const;

    MsNode* left() const { return deps.at(0); }
    MsNode* right() const { return deps.at(1); }
};

struct MsNet {
    std::deque<MsNode> nodes;
    MsNode* production = nullptr;

    MsNode* add_node(MsNode node) {
        node.id = static_cast<int>(nodes.size());
        nodes.push_back(std::move(node));
        return &nodes.back();
    }
};

/// Per-node result set: at most one marking per match.
using MsResultSet = std::unordered_map<Match, Marking, MatchHash>;

/// Marking-sensitive configuration. Besides the result sets it keeps
/// change-tracking bookkeeping so that re-running an execution order
/// after a host change only recomputes nodes whose inputs changed.
struct MsConfiguration {
    struct Entry {
        MsResultSet set;
        std::uint64_t version = 0;
        std::uint64_t host_epoch_at_exec = 0;
        std::vector<std::uint64_t> dep_versions_at_exec;
        bool executed = false;
    };

    std::unordered_map<const MsNode*, Entry> entries;
    std::uint64_t host_epoch = 1;

    const MsResultSet& result(const MsNode* n) const {
        static const MsResultSet empty;
        auto it = entries.find(n);
        return it == entries.end() ? empty : it->second.set;
    }

    /// Marks all previously computed input-node results as stale.
    void note_host_changed() { ++host_epoch; }

    bool same_result_sets(const MsConfiguration& other,
                          const std::vector<const MsNode*>& nodes) const;
};

/// Target result set of one marking-sensitive node. Throws
/// IncompleteConfiguration when a dependency has no entry in c.
MsResultSet ms_target_result_set(const MsNode& n, const TypedGraph& host,
                                 const RelevantSubgraph& relevant, const MsConfiguration& c);

/// Matches of a node's current result set with markings discarded.
std::vector<Match> stripped_result_set(const MsNode* n, const MsConfiguration& c);

using ExecutionTracer = std::function<void(const MsNode&, std::size_t added, std::size_t removed)>;

/// Executes the node sequence in place. A node is recomputed when its
/// dependencies' results or (for input, navigation, and translation
/// nodes) the host epoch changed since it last ran; otherwise its stored
/// result already equals its target and the step is skipped.
void execute_localized(std::span<MsNode* const> order, const TypedGraph& host,
                       const RelevantSubgraph& relevant, MsConfiguration& c,
                       const ExecutionTracer& tracer = nullptr);

/// Sum over tuples of |V^Q| + |E^Q| of the owning node's query.
std::size_t ms_effective_size(const std::vector<const MsNode*>& nodes, const MsConfiguration& c);

std::size_t ms_total_tuples(const std::vector<const MsNode*>& nodes, const MsConfiguration& c);

} // namespace lrete
