#include "lrete/localize.hpp"

#include <algorithm>

namespace lrete {

MsNode* Lns::extension_point(const Id& v) const {
    if (v_input != nullptr && v_input->qv == v) return v_union;
    if (w_input != nullptr && w_input->qv == v) return w_union;
    return nullptr;
}

namespace {

using detail::attach_rps;

TypedGraph single_vertex_query(const TypedGraph& q, const Id& v) {
    TypedGraph out(q.types_ptr());
    out.add_vertex(v, q.vertex_type(v));
    return out;
}

MsNode* add_vertex_input(MsNet& arena, const TypedGraph& q, const Id& v) {
    MsNode n;
    n.kind = MsNode::Kind::VertexInput;
    n.query = single_vertex_query(q, v);
    n.qv = v;
    return arena.add_node(std::move(n));
}

MsNode* add_union(MsNet& arena, const TypedGraph& query, std::vector<MsNode*> deps, int height) {
    MsNode n;
    n.kind = MsNode::Kind::Union;
    n.query = query;
    n.deps = std::move(deps);
    n.height = height;
    return arena.add_node(std::move(n));
}

/// LNS wiring per the construction: two vertex inputs, two unions over
/// them, forward/backward navigation over the unions, a top union.
/// Self-loop edges degenerate to a single input side.
Lns build_lns(MsNet& arena, const TypedGraph& edge_query, const Id& v, const Id& e, const Id& w) {
    Lns lns;
    lns.v_input = add_vertex_input(arena, edge_query, v);
    lns.v_union = add_union(arena, lns.v_input->query, {lns.v_input}, 0);
    if (w != v) {
        lns.w_input = add_vertex_input(arena, edge_query, w);
        lns.w_union = add_union(arena, lns.w_input->query, {lns.w_input}, 0);
    } else {
        lns.w_input = lns.v_input;
        lns.w_union = lns.v_union;
    }

    MsNode fwd;
    fwd.kind = MsNode::Kind::ForwardNav;
    fwd.query = edge_query;
    fwd.deps = {lns.v_union};
    fwd.qv = v;
    fwd.qe = e;
    fwd.qw = w;
    lns.forward = arena.add_node(std::move(fwd));

    MsNode bwd;
    bwd.kind = MsNode::Kind::BackwardNav;
    bwd.query = edge_query;
    bwd.deps = {lns.w_union};
    bwd.qv = v;
    bwd.qe = e;
    bwd.qw = w;
    lns.backward = arena.add_node(std::move(bwd));

    lns.top = add_union(arena, edge_query, {lns.forward, lns.backward}, 0);
    return lns;
}

void append_lns_order(const Lns& lns, std::vector<MsNode*>& order) {
    order.push_back(lns.v_input);
    if (lns.w_input != lns.v_input) order.push_back(lns.w_input);
    order.push_back(lns.v_union);
    if (lns.w_union != lns.v_union) order.push_back(lns.w_union);
    order.push_back(lns.forward);
    order.push_back(lns.backward);
    order.push_back(lns.top);
}

/// First structure in construction order with a vertex input for v.
MsNode* find_extension_point(PlainSubnet& subnet, const Id& v) {
    for (const Lns& lns : subnet.structures) {
        MsNode* ext = lns.extension_point(v);
        if (ext != nullptr) return ext;
    }
    return nullptr;
}

bool is_well_formed_plain(const ReteNode* n) {
    if (n == nullptr) return false;
    switch (n->kind) {
        case ReteNode::Kind::EdgeInput:
            return n->left == nullptr && n->right == nullptr;
        case ReteNode::Kind::Join:
            return is_well_formed_plain(n->left) && is_well_formed_plain(n->right);
        default:
            return false;
    }
}

} // namespace

namespace detail {

Id first_anchor_vertex(const Match& anchor) {
    if (anchor.vertex_entries().empty())
        fail(ErrorKind::UnsupportedNet, "anchor without vertex mapping");
    return anchor.vertex_entries().front().first;  // entries are sorted
}

Id first_query_vertex(const TypedGraph& q) {
    if (q.vertices().empty()) fail(ErrorKind::UnsupportedQuery, "empty query graph");
    return q.vertices().begin()->first;
}

Rps attach_rps(MsNet& arena, MsNode* feed, Marking filter_threshold, Marking assign_value,
               const Id& source_vertex, const Id& target_vertex, PlainSubnet& target_pattern,
               std::vector<MsNode*>& order_out) {
    MsNode* extension = find_extension_point(target_pattern, target_vertex);
    if (extension == nullptr)
        fail(ErrorKind::UnsupportedNet,
             "no extension point for request vertex " + target_vertex);

    Rps rps;
    MsNode filter;
    filter.kind = MsNode::Kind::MarkFilter;
    filter.query = feed->query;
    filter.deps = {feed};
    filter.filter_threshold = filter_threshold;
    filter.height = feed->height;
    rps.filter = arena.add_node(std::move(filter));

    MsNode proj;
    proj.kind = MsNode::Kind::Projection;
    proj.query = single_vertex_query(extension->query, target_vertex);
    proj.deps = {rps.filter};
    proj.proj_in = source_vertex;
    proj.proj_out = target_vertex;
    proj.height = feed->height;
    rps.projection = arena.add_node(std::move(proj));

    MsNode assign;
    assign.kind = MsNode::Kind::MarkAssign;
    assign.query = rps.projection->query;
    assign.deps = {rps.projection};
    assign.assign_value = assign_value;
    assign.height = feed->height;
    rps.assign = arena.add_node(std::move(assign));

    extension->deps.push_back(rps.assign);

    order_out.push_back(rps.filter);
    order_out.push_back(rps.projection);
    order_out.push_back(rps.assign);
    return rps;
}

PlainSubnet build_plain_subnet(MsNet& arena, const ReteNode* production, bool with_extension) {
    PlainSubnet subnet;
    switch (production->kind) {
        case ReteNode::Kind::VertexInput: {
            MsNode* input = add_vertex_input(arena, production->query, production->qv);
            if (with_extension) {
                // Vertex-only patterns have no LNS; requests need a union
                // extension point above the bare input.
                MsNode* ext = add_union(arena, input->query, {input}, 0);
                subnet.production = ext;
                subnet.order = {input, ext};
                Lns lns;
                lns.v_input = input;
                lns.v_union = ext;
                lns.top = ext;
                subnet.structures.push_back(lns);
            } else {
                subnet.production = input;
                subnet.order = {input};
            }
            subnet.height = 0;
            return subnet;
        }
        case ReteNode::Kind::EdgeInput: {
            Lns lns = build_lns(arena, production->query, production->qv, production->qe,
                                production->qw);
            subnet.production = lns.top;
            append_lns_order(lns, subnet.order);
            subnet.structures.push_back(lns);
            subnet.height = 0;
            return subnet;
        }
        case ReteNode::Kind::Join: {
            PlainSubnet left = build_plain_subnet(arena, production->left, with_extension);
            PlainSubnet right = build_plain_subnet(arena, production->right, with_extension);
            int h = production->height;

            MsNode join;
            join.kind = MsNode::Kind::Join;
            join.query = production->query;
            join.deps = {left.production, right.production};
            join.overlap_vertices = production->overlap_vertices;
            join.overlap_edges = production->overlap_edges;
            join.height = h;
            MsNode* join_ptr = arena.add_node(std::move(join));

            // Shared request vertex: the first overlap vertex in id order.
            std::vector<Id> shared = production->overlap_vertices;
            std::sort(shared.begin(), shared.end());
            const Id& v = shared.front();

            // RPS_l reads the left production and feeds the right subnet;
            // RPS_r mirrors it. Execution interleaves them so that
            // requests seen late still reach the opposite subnet before
            // the join runs.
            std::vector<MsNode*> rps_l_order, rps_r_order;
            attach_rps(arena, left.production, static_cast<Marking>(h), static_cast<Marking>(h),
                       v, v, right, rps_l_order);
            attach_rps(arena, right.production, static_cast<Marking>(h), static_cast<Marking>(h),
                       v, v, left, rps_r_order);

            auto append = [&](const std::vector<MsNode*>& part) {
                subnet.order.insert(subnet.order.end(), part.begin(), part.end());
            };
            append(rps_r_order);
            append(left.order);
            append(rps_l_order);
            append(right.order);
            append(rps_r_order);
            append(left.order);
            subnet.order.push_back(join_ptr);

            subnet.production = join_ptr;
            subnet.height = h;
            subnet.structures = std::move(left.structures);
            subnet.structures.insert(subnet.structures.end(), right.structures.begin(),
                                     right.structures.end());
            return subnet;
        }
        default:
            fail(ErrorKind::UnsupportedNet, "localize requires a well-formed plain net");
    }
}

PlainSubnet build_plain_subnet_for(MsNet& arena, const TypedGraph& pattern, bool with_extension) {
    ReteNet plain = build_join_tree(pattern);
    return build_plain_subnet(arena, plain.production, with_extension);
}

PsiSubnet build_psi_subnet(MsNet& arena, const TypedGraph& pattern, const ConditionPtr& cond) {
    PsiSubnet subnet;
    if (!cond || cond->kind == Condition::Kind::True) {
        subnet.pattern = build_plain_subnet_for(arena, pattern, true);
        subnet.production = subnet.pattern.production;
        subnet.order = subnet.pattern.order;
        subnet.height = subnet.pattern.height;
        return subnet;
    }

    switch (cond->kind) {
        case Condition::Kind::Exists: {
            PlainSubnet base = build_plain_subnet_for(arena, pattern, true);
            PsiSubnet nested = build_psi_subnet(arena, cond->target, cond->child);

            // Requests travel along the anchor: project the base match to
            // the first anchored vertex, renamed into the nested pattern's
            // query space.
            Id source_vertex = detail::first_anchor_vertex(cond->anchor);
            Id target_vertex = *cond->anchor.vertex_image(source_vertex);

            subnet.order = base.order;
            attach_rps(arena, base.production, static_cast<Marking>(base.height), kInfinity,
                       source_vertex, target_vertex, nested.pattern, subnet.order);
            subnet.order.insert(subnet.order.end(), nested.order.begin(), nested.order.end());

            MsNode semi;
            semi.kind = MsNode::Kind::SemiJoin;
            semi.query = pattern;
            semi.deps = {base.production, nested.production};
            semi.semi_variant = anchor_is_total(cond->anchor, pattern)
                                    ? SemiVariant::TotalAnchor
                                    : SemiVariant::PartialAnchor;
            semi.anchor = cond->anchor;
            semi.height = 1 + std::max(base.height, nested.height);
            MsNode* semi_ptr = arena.add_node(std::move(semi));
            subnet.order.push_back(semi_ptr);

            subnet.production = semi_ptr;
            subnet.pattern = std::move(base);
            subnet.height = semi_ptr->height;
            return subnet;
        }
        case Condition::Kind::Not: {
            PlainSubnet base = build_plain_subnet_for(arena, pattern, true);
            PsiSubnet nested = build_psi_subnet(arena, pattern, cond->left);

            Id v = detail::first_query_vertex(pattern);
            subnet.order = base.order;
            attach_rps(arena, base.production, static_cast<Marking>(base.height), kInfinity, v, v,
                       nested.pattern, subnet.order);
            subnet.order.insert(subnet.order.end(), nested.order.begin(), nested.order.end());

            MsNode anti;
            anti.kind = MsNode::Kind::AntiJoin;
            anti.query = pattern;
            anti.deps = {base.production, nested.production};
            for (const auto& [qv, t] : pattern.vertices()) anti.overlap_vertices.push_back(qv);
            for (const auto& [qe, rec] : pattern.edges()) anti.overlap_edges.push_back(qe);
            anti.height = 1 + std::max(base.height, nested.height);
            MsNode* anti_ptr = arena.add_node(std::move(anti));
            subnet.order.push_back(anti_ptr);

            subnet.production = anti_ptr;
            subnet.pattern = std::move(base);
            subnet.height = anti_ptr->height;
            return subnet;
        }
        case Condition::Kind::And: {
            PlainSubnet base = build_plain_subnet_for(arena, pattern, true);
            Id v = detail::first_query_vertex(pattern);

            PsiSubnet nested1 = build_psi_subnet(arena, pattern, cond->left);
            subnet.order = base.order;
            attach_rps(arena, base.production, static_cast<Marking>(base.height), kInfinity, v, v,
                       nested1.pattern, subnet.order);
            subnet.order.insert(subnet.order.end(), nested1.order.begin(), nested1.order.end());

            MsNode semi1;
            semi1.kind = MsNode::Kind::SemiJoin;
            semi1.query = pattern;
            semi1.deps = {base.production, nested1.production};
            for (const auto& [qv, t] : pattern.vertices()) semi1.overlap_vertices.push_back(qv);
            for (const auto& [qe, rec] : pattern.edges()) semi1.overlap_edges.push_back(qe);
            semi1.height = 1 + std::max(base.height, nested1.height);
            MsNode* semi1_ptr = arena.add_node(std::move(semi1));
            subnet.order.push_back(semi1_ptr);

            PsiSubnet nested2 = build_psi_subnet(arena, pattern, cond->right);
            attach_rps(arena, semi1_ptr, static_cast<Marking>(semi1_ptr->height), kInfinity, v, v,
                       nested2.pattern, subnet.order);
            subnet.order.insert(subnet.order.end(), nested2.order.begin(), nested2.order.end());

            MsNode semi2;
            semi2.kind = MsNode::Kind::SemiJoin;
            semi2.query = pattern;
            semi2.deps = {semi1_ptr, nested2.production};
            semi2.overlap_vertices = semi1_ptr->overlap_vertices;
            semi2.overlap_edges = semi1_ptr->overlap_edges;
            semi2.height = 1 + std::max(semi1_ptr->height, nested2.height);
            MsNode* semi2_ptr = arena.add_node(std::move(semi2));
            subnet.order.push_back(semi2_ptr);

            subnet.production = semi2_ptr;
            subnet.pattern = std::move(base);
            subnet.height = semi2_ptr->height;
            return subnet;
        }
        default:
            fail(ErrorKind::UnsupportedQuery, "unknown condition kind");
    }
}

} // namespace detail

LocalizedNet localize(const ReteNet& net) {
    if (net.production == nullptr) fail(ErrorKind::UnsupportedNet, "net without production");
    if (net.production->kind != ReteNode::Kind::VertexInput &&
        !is_well_formed_plain(net.production))
        fail(ErrorKind::UnsupportedNet, "localize requires a well-formed plain net");

    LocalizedNet out;
    out.arena = std::make_shared<MsNet>();
    out.root = detail::build_plain_subnet(*out.arena, net.production, false);
    out.arena->production = out.root.production;
    return out;
}

LocalizedPsiNet localize_psi(const ExtendedQuery& q) {
    std::vector<std::string> violations = validate_query(q);
    if (!violations.empty())
        fail(ErrorKind::UnsupportedQuery, "invalid query: " + violations.front());

    LocalizedPsiNet out;
    out.arena = std::make_shared<MsNet>();
    out.root = detail::build_psi_subnet(*out.arena, q.pattern, q.condition);
    out.arena->production = out.root.production;
    return out;
}

std::vector<const MsNode*> LocalizedNet::all_nodes() const {
    std::vector<const MsNode*> out;
    for (const MsNode& n : arena->nodes) out.push_back(&n);
    return out;
}

std::vector<const MsNode*> LocalizedPsiNet::all_nodes() const {
    std::vector<const MsNode*> out;
    for (const MsNode& n : arena->nodes) out.push_back(&n);
    return out;
}

} // namespace lrete
