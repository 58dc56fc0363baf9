#include "lrete/sat_delta.hpp"

#include <algorithm>

namespace lrete {

namespace {

using detail::attach_rps;
using detail::build_plain_subnet_for;
using detail::build_psi_subnet;
using detail::first_anchor_vertex;
using detail::first_query_vertex;

MsNode* add_union(MsNet& arena, const TypedGraph& query, std::vector<MsNode*> deps, int height) {
    MsNode n;
    n.kind = MsNode::Kind::Union;
    n.query = query;
    n.deps = std::move(deps);
    n.height = height;
    return arena.add_node(std::move(n));
}

SatSubnet build_sat_subnet(MsNet& arena, const TypedGraph& pattern, const ConditionPtr& cond) {
    SatSubnet subnet;
    if (!cond || cond->kind == Condition::Kind::True) {
        MsNode dummy;
        dummy.kind = MsNode::Kind::Dummy;
        dummy.query = pattern;
        subnet.production = arena.add_node(std::move(dummy));
        subnet.order = {subnet.production};
        subnet.height = 0;
        return subnet;
    }

    switch (cond->kind) {
        case Condition::Kind::Exists: {
            PlainSubnet base = build_plain_subnet_for(arena, pattern, true);
            PlainSubnet nested_pattern = build_plain_subnet_for(arena, cond->target, true);
            SatSubnet nested_sat = build_sat_subnet(arena, cond->target, cond->child);

            MsNode* combined =
                add_union(arena, cond->target, {nested_pattern.production, nested_sat.production},
                          std::max(nested_pattern.height, nested_sat.height));

            // Requests travel against the anchor here: a nested match is
            // projected at the anchored target vertex and seeds the base
            // pattern at the corresponding context vertex.
            Id context_vertex = first_anchor_vertex(cond->anchor);
            Id nested_vertex = *cond->anchor.vertex_image(context_vertex);

            subnet.order = nested_pattern.order;
            subnet.order.insert(subnet.order.end(), nested_sat.order.begin(),
                                nested_sat.order.end());
            subnet.order.push_back(combined);
            attach_rps(arena, combined, static_cast<Marking>(combined->height), kInfinity,
                       nested_vertex, context_vertex, base, subnet.order);
            subnet.order.insert(subnet.order.end(), base.order.begin(), base.order.end());

            MsNode semi;
            semi.kind = MsNode::Kind::SemiJoin;
            semi.query = pattern;
            semi.deps = {base.production, combined};
            semi.semi_variant = anchor_is_total(cond->anchor, pattern)
                                    ? SemiVariant::TotalAnchor
                                    : SemiVariant::PartialAnchor;
            semi.anchor = cond->anchor;
            semi.height = 1 + std::max(base.height, combined->height);
            MsNode* semi_ptr = arena.add_node(std::move(semi));
            subnet.order.push_back(semi_ptr);

            subnet.production = semi_ptr;
            subnet.height = semi_ptr->height;
            return subnet;
        }
        case Condition::Kind::Not:
            return build_sat_subnet(arena, pattern, cond->left);
        case Condition::Kind::And: {
            SatSubnet first = build_sat_subnet(arena, pattern, cond->left);
            SatSubnet second = build_sat_subnet(arena, pattern, cond->right);
            MsNode* combined = add_union(arena, pattern, {first.production, second.production},
                                         std::max(first.height, second.height));
            subnet.order = first.order;
            subnet.order.insert(subnet.order.end(), second.order.begin(), second.order.end());
            subnet.order.push_back(combined);
            subnet.production = combined;
            subnet.height = combined->height;
            return subnet;
        }
        default:
            fail(ErrorKind::UnsupportedQuery, "unknown condition kind");
    }
}

DeltaParts build_delta_parts(MsNet& arena, const ExtendedQuery& q, SatSubnet own_sat,
                             MsNode* other_sat_production, const GraphModification* mod,
                             TranslateDirection direction) {
    DeltaParts parts;
    parts.base = build_plain_subnet_for(arena, q.pattern, false);
    parts.sat = std::move(own_sat);

    MsNode filter;
    filter.kind = MsNode::Kind::MarkFilter;
    filter.query = q.pattern;
    filter.deps = {parts.base.production};
    filter.filter_threshold = static_cast<Marking>(parts.base.height);
    filter.height = parts.base.height;
    parts.filter = arena.add_node(std::move(filter));

    MsNode translate;
    translate.kind = MsNode::Kind::Translate;
    translate.query = q.pattern;
    translate.deps = {other_sat_production};
    translate.modification = mod;
    translate.direction = direction;
    translate.height = other_sat_production->height;
    parts.translate = arena.add_node(std::move(translate));

    parts.combined = add_union(
        arena, q.pattern, {parts.filter, parts.sat.production, parts.translate},
        std::max({parts.filter->height, parts.sat.height, parts.translate->height}));

    parts.psi = build_psi_subnet(arena, q.pattern, q.condition);

    parts.order = parts.base.order;
    parts.order.push_back(parts.filter);
    parts.order.insert(parts.order.end(), parts.sat.order.begin(), parts.sat.order.end());
    parts.order.push_back(parts.translate);
    parts.order.push_back(parts.combined);

    Id v = first_query_vertex(q.pattern);
    attach_rps(arena, parts.combined, static_cast<Marking>(parts.combined->height), kInfinity, v,
               v, parts.psi.pattern, parts.order);
    parts.order.insert(parts.order.end(), parts.psi.order.begin(), parts.psi.order.end());

    MsNode semi;
    semi.kind = MsNode::Kind::SemiJoin;
    semi.query = q.pattern;
    semi.deps = {parts.combined, parts.psi.production};
    for (const auto& [qv, t] : q.pattern.vertices()) semi.overlap_vertices.push_back(qv);
    for (const auto& [qe, rec] : q.pattern.edges()) semi.overlap_edges.push_back(qe);
    semi.height = 1 + std::max(parts.combined->height, parts.psi.height);
    parts.production = arena.add_node(std::move(semi));
    parts.order.push_back(parts.production);
    return parts;
}

} // namespace

SatNet localize_sat(const ExtendedQuery& q) {
    std::vector<std::string> violations = validate_query(q);
    if (!violations.empty())
        fail(ErrorKind::UnsupportedQuery, "invalid query: " + violations.front());

    SatNet out;
    out.arena = std::make_shared<MsNet>();
    out.root = build_sat_subnet(*out.arena, q.pattern, q.condition);
    out.arena->production = out.root.production;
    return out;
}

std::vector<Match> compute_sat_dependent(const ExtendedQuery& q, const TypedGraph& host,
                                         const RelevantSubgraph& relevant) {
    relevant.validate(host);
    SatNet net = localize_sat(q);
    MsConfiguration config;
    execute_localized(net.order(), host, relevant, config);
    return stripped_result_set(net.production(), config);
}

DiffHarness::DiffHarness(ExtendedQuery q, GraphModification mod, RelevantSubgraph relevant_src,
                         RelevantSubgraph relevant_tgt)
    : query_(std::move(q)),
      mod_(std::move(mod)),
      relevant_src_(std::move(relevant_src)),
      relevant_tgt_(std::move(relevant_tgt)) {
    std::vector<std::string> violations = validate_query(query_);
    if (!violations.empty())
        fail(ErrorKind::UnsupportedQuery, "invalid query: " + violations.front());
    if (!is_subgraph_restricted(mod_, relevant_src_, relevant_tgt_))
        fail(ErrorKind::PreconditionViolation,
             "modification is not subgraph-restricted for the given relevant subgraphs");

    arena_ = std::make_shared<MsNet>();
    sat_src_ = build_sat_subnet(*arena_, query_.pattern, query_.condition);
    sat_tgt_ = build_sat_subnet(*arena_, query_.pattern, query_.condition);
    delta_src_ = build_delta_parts(*arena_, query_, sat_src_, sat_tgt_.production, &mod_,
                                   TranslateDirection::ToSource);
    delta_tgt_ = build_delta_parts(*arena_, query_, sat_tgt_, sat_src_.production, &mod_,
                                   TranslateDirection::ToTarget);

    auto add_translate = [&](MsNode* dep, TranslateDirection direction) {
        MsNode t;
        t.kind = MsNode::Kind::Translate;
        t.query = query_.pattern;
        t.deps = {dep};
        t.modification = &mod_;
        t.direction = direction;
        t.height = dep->height;
        return arena_->add_node(std::move(t));
    };
    auto add_anti = [&](MsNode* left, MsNode* right) {
        MsNode anti;
        anti.kind = MsNode::Kind::AntiJoin;
        anti.query = query_.pattern;
        anti.deps = {left, right};
        for (const auto& [qv, t] : query_.pattern.vertices()) anti.overlap_vertices.push_back(qv);
        for (const auto& [qe, rec] : query_.pattern.edges()) anti.overlap_edges.push_back(qe);
        anti.height = 1 + std::max(left->height, right->height);
        return arena_->add_node(std::move(anti));
    };

    removed_translate_ = add_translate(delta_tgt_.production, TranslateDirection::ToSource);
    removed_anti_ = add_anti(delta_src_.production, removed_translate_);
    added_translate_ = add_translate(delta_src_.production, TranslateDirection::ToTarget);
    added_anti_ = add_anti(delta_tgt_.production, added_translate_);
    arena_->production = removed_anti_;
}

ResultDelta DiffHarness::compute() {
    // The satisfaction nets run first so each side's translation node
    // sees a consistent production of the opposite host snapshot.
    execute_localized(sat_src_.order, mod_.source, relevant_src_, config_);
    execute_localized(sat_tgt_.order, mod_.target, relevant_tgt_, config_);
    execute_localized(delta_src_.order, mod_.source, relevant_src_, config_);
    execute_localized(delta_tgt_.order, mod_.target, relevant_tgt_, config_);

    std::vector<MsNode*> removed_tail{removed_translate_, removed_anti_};
    execute_localized(removed_tail, mod_.source, relevant_src_, config_);
    std::vector<MsNode*> added_tail{added_translate_, added_anti_};
    execute_localized(added_tail, mod_.target, relevant_tgt_, config_);

    ResultDelta delta;
    delta.removed = stripped_result_set(removed_anti_, config_);
    delta.added = stripped_result_set(added_anti_, config_);
    return delta;
}

ResultDelta compute_result_delta(const ExtendedQuery& q, const GraphModification& mod,
                                 const RelevantSubgraph& relevant_src,
                                 const RelevantSubgraph& relevant_tgt) {
    DiffHarness harness(q, mod, relevant_src, relevant_tgt);
    return harness.compute();
}

} // namespace lrete
