#pragma once

#include <memory>

#include "lrete/ms_rete.hpp"

namespace lrete {

/// The seven-node replacement for an edge input: vertex inputs seeded
/// from the relevant subgraph, union extension points for injected
/// requests, and forward/backward navigation over the full host.
struct Lns {
    MsNode* v_input = nullptr;
    MsNode* w_input = nullptr;
    MsNode* v_union = nullptr;  // extension point for requests on v
    MsNode* w_union = nullptr;  // extension point for requests on w
    MsNode* forward = nullptr;
    MsNode* backward = nullptr;
    MsNode* top = nullptr;

    /// Extension point for a request on the given query vertex, if this
    /// structure has a vertex input for it.
    MsNode* extension_point(const Id& v) const;
};

/// The three-node filter/project/assign chain through which one subnet
/// requests complementary matches from another.
struct Rps {
    MsNode* filter = nullptr;
    MsNode* projection = nullptr;
    MsNode* assign = nullptr;
};

/// A localized subnet: production, execution order (with the deliberate
/// repetitions of the order construction), the local navigation
/// structures in construction order, and the join tree height.
struct PlainSubnet {
    MsNode* production = nullptr;
    std::vector<MsNode*> order;
    std::vector<Lns> structures;
    int height = 0;
};

struct PsiSubnet {
    MsNode* production = nullptr;
    std::vector<MsNode*> order;
    PlainSubnet pattern;  // pattern subnet of the topmost recursion level
    int height = 0;
};

/// Result of localizing a net; owns the marking-sensitive nodes.
struct LocalizedNet {
    std::shared_ptr<MsNet> arena;
    PlainSubnet root;

    MsNode* production() const { return root.production; }
    const std::vector<MsNode*>& order() const { return root.order; }
    std::vector<const MsNode*> all_nodes() const;
};

struct LocalizedPsiNet {
    std::shared_ptr<MsNet> arena;
    PsiSubnet root;

    MsNode* production() const { return root.production; }
    const std::vector<MsNode*>& order() const { return root.order; }
    std::vector<const MsNode*> all_nodes() const;
};

/// Localizes a well-formed plain RETE net: edge inputs become local
/// navigation structures, joins become marking-sensitive joins with a
/// request projection structure into either subnet, a single vertex
/// input becomes a marking-sensitive vertex input.
LocalizedNet localize(const ReteNet& net);

/// Localized net for an extended query, built per the recursive
/// four-case construction with RPS-infinity request structures feeding
/// the nested subnets.
LocalizedPsiNet localize_psi(const ExtendedQuery& q);

namespace detail {

/// Shared builders used by the sat/delta constructions.
PlainSubnet build_plain_subnet(MsNet& arena, const ReteNode* production, bool with_extension);
PlainSubnet build_plain_subnet_for(MsNet& arena, const TypedGraph& pattern, bool with_extension);
PsiSubnet build_psi_subnet(MsNet& arena, const TypedGraph& pattern, const ConditionPtr& condition);

/// Request projection structure reading from `feed` and injecting
/// single-vertex requests into an extension point of `target_pattern`.
/// `source_vertex` is the projected vertex in the feed's query space;
/// `target_vertex` the (possibly renamed) vertex in the target space.
/// Appends [filter, projection, assign] to `order_out`.
Rps attach_rps(MsNet& arena, MsNode* feed, Marking filter_threshold, Marking assign_value,
               const Id& source_vertex, const Id& target_vertex, PlainSubnet& target_pattern,
               std::vector<MsNode*>& order_out);

/// Lexicographically first vertex of the anchor's domain.
Id first_anchor_vertex(const Match& anchor);

/// Lexicographically first vertex of a query graph.
Id first_query_vertex(const TypedGraph& q);

} // namespace detail

} // namespace lrete
