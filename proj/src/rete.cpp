#include "lrete/rete.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lrete {

namespace {

TypedGraph single_vertex_query(const TypedGraph& q, const Id& v) {
    TypedGraph out(q.types_ptr());
    out.add_vertex(v, q.vertex_type(v));
    return out;
}

TypedGraph single_edge_query(const TypedGraph& q, const Id& e) {
    const EdgeRec& rec = q.edge(e);
    TypedGraph out(q.types_ptr());
    out.add_vertex(rec.src, q.vertex_type(rec.src));
    if (rec.tgt != rec.src) out.add_vertex(rec.tgt, q.vertex_type(rec.tgt));
    out.add_edge(e, rec.type, rec.src, rec.tgt);
    return out;
}

TypedGraph union_query(const TypedGraph& a, const TypedGraph& b) {
    TypedGraph out = a;
    for (const auto& [v, t] : b.vertices())
        if (!out.has_vertex(v)) out.add_vertex(v, t);
    for (const auto& [e, rec] : b.edges())
        if (!out.has_edge(e)) out.add_edge(e, rec.type, rec.src, rec.tgt);
    return out;
}

void compute_overlap(const TypedGraph& a, const TypedGraph& b, std::vector<Id>& vs,
                     std::vector<Id>& es) {
    for (const auto& [v, t] : a.vertices())
        if (b.has_vertex(v)) vs.push_back(v);
    for (const auto& [e, rec] : a.edges())
        if (b.has_edge(e)) es.push_back(e);
}

/// Canonical edge order: depth-first over the undirected view from the
/// lexicographically smallest vertex, incident edges visited in id
/// order. Every prefix spans a connected subgraph.
std::vector<Id> canonical_edge_order(const TypedGraph& q) {
    std::vector<Id> order;
    std::set<Id> visited_edges;
    std::set<Id> visited_vertices;
    std::function<void(const Id&)> dfs = [&](const Id& u) {
        visited_vertices.insert(u);
        std::set<Id> incident(q.out_edges(u).begin(), q.out_edges(u).end());
        incident.insert(q.in_edges(u).begin(), q.in_edges(u).end());
        for (const Id& e : incident) {
            if (!visited_edges.insert(e).second) continue;
            order.push_back(e);
            const EdgeRec& rec = q.edge(e);
            const Id& other = rec.src == u ? rec.tgt : rec.src;
            if (!visited_vertices.count(other)) dfs(other);
        }
    };
    dfs(q.vertices().begin()->first);
    return order;
}

ReteNode* add_join(ReteNet& net, ReteNode* left, ReteNode* right, int height) {
    ReteNode join;
    join.kind = ReteNode::Kind::Join;
    join.query = union_query(left->query, right->query);
    join.left = left;
    join.right = right;
    compute_overlap(left->query, right->query, join.overlap_vertices, join.overlap_edges);
    if (join.overlap_vertices.empty())
        fail(ErrorKind::UnsupportedNet, "join with empty overlap");
    join.height = height;
    return net.add_node(std::move(join));
}

ReteNode* build_join_tree_into(ReteNet& net, const TypedGraph& q) {
    if (q.vertex_count() == 0) fail(ErrorKind::UnsupportedQuery, "empty query graph");
    if (!is_weakly_connected(q)) fail(ErrorKind::UnsupportedQuery, "disconnected query graph");

    if (q.edge_count() == 0) {
        const Id& v = q.vertices().begin()->first;
        ReteNode input;
        input.kind = ReteNode::Kind::VertexInput;
        input.query = single_vertex_query(q, v);
        input.qv = v;
        return net.add_node(std::move(input));
    }

    ReteNode* root = nullptr;
    int height = 0;
    for (const Id& e : canonical_edge_order(q)) {
        ReteNode leaf;
        leaf.kind = ReteNode::Kind::EdgeInput;
        leaf.query = single_edge_query(q, e);
        const EdgeRec& rec = q.edge(e);
        leaf.qv = rec.src;
        leaf.qe = e;
        leaf.qw = rec.tgt;
        ReteNode* leaf_ptr = net.add_node(std::move(leaf));
        root = root == nullptr ? leaf_ptr : add_join(net, root, leaf_ptr, ++height);
    }
    return root;
}

ReteNode* build_extended_into(ReteNet& net, const TypedGraph& pattern, const ConditionPtr& cond);

ReteNode* add_condition_join(ReteNet& net, ReteNode::Kind kind, ReteNode* left, ReteNode* right,
                             SemiVariant variant, const Match& anchor) {
    ReteNode node;
    node.kind = kind;
    node.query = left->query;
    node.left = left;
    node.right = right;
    node.semi_variant = variant;
    node.anchor = anchor;
    if (variant == SemiVariant::Overlap) {
        compute_overlap(left->query, right->query, node.overlap_vertices, node.overlap_edges);
        if (node.overlap_vertices.empty())
            fail(ErrorKind::UnsupportedNet, "semi/anti join with empty overlap");
    }
    node.height = 1 + std::max(left->height, right->height);
    return net.add_node(std::move(node));
}

ReteNode* build_extended_into(ReteNet& net, const TypedGraph& pattern, const ConditionPtr& cond) {
    ReteNode* base = build_join_tree_into(net, pattern);
    if (!cond || cond->kind == Condition::Kind::True) return base;

    switch (cond->kind) {
        case Condition::Kind::Exists: {
            ReteNode* nested = build_extended_into(net, cond->target, cond->child);
            SemiVariant variant = anchor_is_total(cond->anchor, pattern)
                                      ? SemiVariant::TotalAnchor
                                      : SemiVariant::PartialAnchor;
            return add_condition_join(net, ReteNode::Kind::SemiJoin, base, nested, variant,
                                      cond->anchor);
        }
        case Condition::Kind::Not: {
            ReteNode* nested = build_extended_into(net, pattern, cond->left);
            return add_condition_join(net, ReteNode::Kind::AntiJoin, base, nested,
                                      SemiVariant::Overlap, Match{});
        }
        case Condition::Kind::And: {
            ReteNode* first = build_extended_into(net, pattern, cond->left);
            ReteNode* semi1 = add_condition_join(net, ReteNode::Kind::SemiJoin, base, first,
                                                 SemiVariant::Overlap, Match{});
            ReteNode* second = build_extended_into(net, pattern, cond->right);
            return add_condition_join(net, ReteNode::Kind::SemiJoin, semi1, second,
                                      SemiVariant::Overlap, Match{});
        }
        default:
            break;
    }
    fail(ErrorKind::UnsupportedQuery, "unknown condition kind");
}

} // namespace

std::string ReteNode::label() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::VertexInput: out << "[" << qv << "]"; break;
        case Kind::EdgeInput: out << "[" << qv << "->" << qw << "]"; break;
        case Kind::Join: out << "[join]"; break;
        case Kind::SemiJoin: out << "[semijoin]"; break;
        case Kind::AntiJoin: out << "[antijoin]"; break;
    }
    return out.str();
}

std::vector<ReteNode*> ReteNet::reverse_topological() const {
    std::vector<ReteNode*> order;
    std::set<const ReteNode*> done;
    std::function<void(ReteNode*)> visit = [&](ReteNode* n) {
        if (n == nullptr || done.count(n)) return;
        visit(n->left);
        visit(n->right);
        done.insert(n);
        order.push_back(n);
    };
    for (const ReteNode& n : nodes) visit(const_cast<ReteNode*>(&n));
    return order;
}

ReteNet build_join_tree(const TypedGraph& q) {
    ReteNet net;
    net.production = build_join_tree_into(net, q);
    return net;
}

ReteNet build_extended_net(const ExtendedQuery& q) {
    ReteNet net;
    net.production = build_extended_into(net, q.pattern, q.condition);
    return net;
}

namespace {

Match restriction_key(const Match& m, const std::vector<Id>& vs, const std::vector<Id>& es) {
    Match key;
    for (const Id& v : vs) {
        const Id* img = m.vertex_image(v);
        if (img != nullptr) key.map_vertex(v, *img);
    }
    for (const Id& e : es) {
        const Id* img = m.edge_image(e);
        if (img != nullptr) key.map_edge(e, *img);
    }
    return key;
}

/// Pullback of a right match along the anchor: the induced mapping on
/// the anchor's domain, comparable against the left match's restriction.
Match anchor_pullback(const Match& right, const Match& anchor) {
    Match key;
    for (const auto& [qx, tx] : anchor.vertex_entries()) {
        const Id* img = right.vertex_image(tx);
        if (img != nullptr) key.map_vertex(qx, *img);
    }
    for (const auto& [qx, tx] : anchor.edge_entries()) {
        const Id* img = right.edge_image(tx);
        if (img != nullptr) key.map_edge(qx, *img);
    }
    return key;
}

Match anchor_domain_restriction(const Match& left, const Match& anchor) {
    Match key;
    for (const auto& [qx, tx] : anchor.vertex_entries()) {
        const Id* img = left.vertex_image(qx);
        if (img != nullptr) key.map_vertex(qx, *img);
    }
    for (const auto& [qx, tx] : anchor.edge_entries()) {
        const Id* img = left.edge_image(qx);
        if (img != nullptr) key.map_edge(qx, *img);
    }
    return key;
}

const MatchSet& dependency_result(const Configuration& c, const ReteNode* dep) {
    auto it = c.sets.find(dep);
    if (it == c.sets.end())
        fail(ErrorKind::IncompleteConfiguration,
             "dependency has no result set: " + dep->label());
    return it->second;
}

std::unordered_set<Match, MatchHash> right_keys_for(const ReteNode& n, const MatchSet& right) {
    std::unordered_set<Match, MatchHash> keys;
    keys.reserve(right.size());
    for (const Match& r : right) {
        if (n.semi_variant == SemiVariant::Overlap)
            keys.insert(restriction_key(r, n.overlap_vertices, n.overlap_edges));
        else
            keys.insert(anchor_pullback(r, n.anchor));
    }
    return keys;
}

Match left_key_for(const ReteNode& n, const Match& l) {
    if (n.semi_variant == SemiVariant::Overlap)
        return restriction_key(l, n.overlap_vertices, n.overlap_edges);
    return anchor_domain_restriction(l, n.anchor);
}

} // namespace

MatchSet target_result_set(const ReteNode& n, const ReteNet& net, const TypedGraph& host,
                           const Configuration& c) {
    (void)net;
    MatchSet out;
    switch (n.kind) {
        case ReteNode::Kind::VertexInput: {
            const Id& type = n.query.vertex_type(n.qv);
            for (const auto& [hv, ht] : host.vertices()) {
                if (ht != type) continue;
                Match m;
                m.map_vertex(n.qv, hv);
                out.insert(std::move(m));
            }
            break;
        }
        case ReteNode::Kind::EdgeInput: {
            const Id& type = n.query.edge(n.qe).type;
            for (const auto& [he, rec] : host.edges()) {
                if (rec.type != type) continue;
                Match m;
                m.map_vertex(n.qv, rec.src);
                m.map_vertex(n.qw, rec.tgt);
                m.map_edge(n.qe, he);
                out.insert(std::move(m));
            }
            break;
        }
        case ReteNode::Kind::Join: {
            const MatchSet& left = dependency_result(c, n.left);
            const MatchSet& right = dependency_result(c, n.right);
            std::unordered_map<Match, std::vector<const Match*>, MatchHash> index;
            index.reserve(right.size());
            for (const Match& r : right)
                index[restriction_key(r, n.overlap_vertices, n.overlap_edges)].push_back(&r);
            for (const Match& l : left) {
                auto it = index.find(restriction_key(l, n.overlap_vertices, n.overlap_edges));
                if (it == index.end()) continue;
                for (const Match* r : it->second) {
                    std::optional<Match> m = Match::merged(l, *r);
                    if (m) out.insert(std::move(*m));
                }
            }
            break;
        }
        case ReteNode::Kind::SemiJoin: {
            const MatchSet& left = dependency_result(c, n.left);
            auto keys = right_keys_for(n, dependency_result(c, n.right));
            for (const Match& l : left)
                if (keys.count(left_key_for(n, l))) out.insert(l);
            break;
        }
        case ReteNode::Kind::AntiJoin: {
            const MatchSet& left = dependency_result(c, n.left);
            auto keys = right_keys_for(n, dependency_result(c, n.right));
            for (const Match& l : left)
                if (keys.count(left_key_for(n, l)) == 0) out.insert(l);
            break;
        }
    }
    return out;
}

Configuration execute_sequence(std::span<ReteNode* const> order, const ReteNet& net,
                               const TypedGraph& host, Configuration c0) {
    for (ReteNode* n : order) {
        MatchSet result = target_result_set(*n, net, host, c0);
        c0.sets[n] = std::move(result);
    }
    return c0;
}

Configuration execute_batch(const ReteNet& net, const TypedGraph& host) {
    Configuration c0;
    for (const ReteNode& n : net.nodes) c0.sets[&n];  // empty starting sets
    std::vector<ReteNode*> order = net.reverse_topological();
    return execute_sequence(order, net, host, std::move(c0));
}

std::size_t effective_size(const ReteNet& net, const Configuration& c) {
    std::size_t total = 0;
    for (const ReteNode& n : net.nodes) {
        auto it = c.sets.find(&n);
        if (it == c.sets.end()) continue;
        std::size_t match_size = n.query.vertex_count() + n.query.edge_count();
        total += it->second.size() * match_size;
    }
    return total;
}

} // namespace lrete
