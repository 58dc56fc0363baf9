#pragma once

#include <deque>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lrete/query.hpp"

namespace lrete {

enum class SemiVariant { Overlap, TotalAnchor, PartialAnchor };

/// Node of a standard RETE net. Each node computes matches for the
/// query subgraph `query`; binary nodes keep their dependencies in
/// (left, right) order.
struct ReteNode {
    enum class Kind { VertexInput, EdgeInput, Join, SemiJoin, AntiJoin };

    Kind kind = Kind::VertexInput;
    int id = -1;
    TypedGraph query;
    ReteNode* left = nullptr;
    ReteNode* right = nullptr;

    // VertexInput / EdgeInput: query element ids.
    Id qv, qe, qw;

    // Join / SemiJoin(Overlap) / AntiJoin: the id-intersection of the
    // dependency query graphs.
    std::vector<Id> overlap_vertices;
    std::vector<Id> overlap_edges;

    // SemiJoin along an anchor morphism.
    SemiVariant semi_variant = SemiVariant::Overlap;
    Match anchor;

    /// Join-tree height; leaves are 0, join-like nodes add one.
    int height = 0;

    std::string label() const;
};

struct ReteNet {
    std::deque<ReteNode> nodes;
    ReteNode* production = nullptr;

    ReteNode* add_node(ReteNode node) {
        node.id = static_cast<int>(nodes.size());
        nodes.push_back(std::move(node));
        return &nodes.back();
    }

    /// Dependencies before dependents; the production comes last.
    std::vector<ReteNode*> reverse_topological() const;
};

using MatchSet = std::unordered_set<Match, MatchHash>;

struct Configuration {
    std::unordered_map<const ReteNode*, MatchSet> sets;

    const MatchSet& result(const ReteNode* n) const {
        static const MatchSet empty;
        auto it = sets.find(n);
        return it == sets.end() ? empty : it->second;
    }
};

/// Tree of joins over edge inputs for a plain query, built left-deep
/// over a canonical depth-first edge order; deterministic for a given
/// query graph. A single-vertex query yields one vertex input.
ReteNet build_join_tree(const TypedGraph& q);

/// Recursive net construction for an extended query: true keeps the
/// plain net, exists adds a semi-join against the net of the nested
/// query, not an anti-join, and a conjunction chains two semi-joins.
ReteNet build_extended_net(const ExtendedQuery& q);

/// Target result set of one node under the given configuration. Throws
/// IncompleteConfiguration when a dependency has no entry.
MatchSet target_result_set(const ReteNode& n, const ReteNet& net, const TypedGraph& host,
                           const Configuration& c);

/// Folds target_result_set over the node sequence.
Configuration execute_sequence(std::span<ReteNode* const> order, const ReteNet& net,
                               const TypedGraph& host, Configuration c0);

/// Batch execution: empty start, reverse topological order.
Configuration execute_batch(const ReteNet& net, const TypedGraph& host);

/// Sum over nodes and matches of |V^Q| + |E^Q| for the node's query.
std::size_t effective_size(const ReteNet& net, const Configuration& c);

} // namespace lrete
