#include "lrete/ms_rete.hpp"

#include <algorithm>
#include <sstream>

namespace lrete {

std::string marking_to_string(Marking phi) {
    return phi == kInfinity ? "inf" : std::to_string(phi);
}

std::string MsNode::label() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::VertexInput: out << "[" << qv << "]phi"; break;
        case Kind::ForwardNav: out << "[" << qv << "->" << qw << "]phi"; break;
        case Kind::BackwardNav: out << "[" << qw << "<-" << qv << "]phi"; break;
        case Kind::Join: out << "[join]phi"; break;
        case Kind::Union: out << "[union]phi"; break;
        case Kind::Projection: out << "[pi " << proj_out << "]phi"; break;
        case Kind::MarkAssign: out << "[phi:=" << marking_to_string(assign_value) << "]"; break;
        case Kind::MarkFilter: out << "[phi>" << marking_to_string(filter_threshold) << "]"; break;
        case Kind::SemiJoin: out << "[semijoin]phi"; break;
        case Kind::AntiJoin: out << "[antijoin]phi"; break;
        case Kind::Translate:
            out << "[translate "
                << (direction == TranslateDirection::ToSource ? "to-source" : "to-target") << "]";
            break;
        case Kind::Dummy: out << "[empty]"; break;
    }
    return out.str();
}

namespace {

void insert_max(MsResultSet& set, Match m, Marking phi) {
    auto [it, inserted] = set.emplace(std::move(m), phi);
    if (!inserted && it->second < phi) it->second = phi;
}

const MsResultSet& dependency_result(const MsConfiguration& c, const MsNode* dep) {
    auto it = c.entries.find(dep);
    if (it == c.entries.end())
        fail(ErrorKind::IncompleteConfiguration,
             "dependency has no result set: " + dep->label());
    return it->second.set;
}

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

std::unordered_set<Match, MatchHash> right_keys_for(const MsNode& n, const MsResultSet& right) {
    std::unordered_set<Match, MatchHash> keys;
    keys.reserve(right.size());
    for (const auto& [r, phi] : right) {
        (void)phi;
        if (n.semi_variant == SemiVariant::Overlap)
            keys.insert(restriction_key(r, n.overlap_vertices, n.overlap_edges));
        else
            keys.insert(anchor_pullback(r, n.anchor));
    }
    return keys;
}

Match left_key_for(const MsNode& n, const Match& l) {
    if (n.semi_variant == SemiVariant::Overlap)
        return restriction_key(l, n.overlap_vertices, n.overlap_edges);
    return anchor_domain_restriction(l, n.anchor);
}

} // namespace

MsResultSet ms_target_result_set(const MsNode& n, const TypedGraph& host,
                                 const RelevantSubgraph& relevant, const MsConfiguration& c) {
    MsResultSet out;
    switch (n.kind) {
        case MsNode::Kind::VertexInput: {
            // Seeds only from the relevant subgraph, marked infinity.
            const Id& type = n.query.vertex_type(n.qv);
            for (const Id& hv : relevant.vertex_ids) {
                if (host.vertex_type(hv) != type) continue;
                Match m;
                m.map_vertex(n.qv, hv);
                out.emplace(std::move(m), kInfinity);
            }
            break;
        }
        case MsNode::Kind::ForwardNav: {
            const Id& type = n.query.edge(n.qe).type;
            for (const auto& [seed, phi] : dependency_result(c, n.deps.at(0))) {
                const Id* x = seed.vertex_image(n.qv);
                if (x == nullptr) continue;
                for (const Id& he : host.out_edges(*x)) {
                    const EdgeRec& rec = host.edge(he);
                    if (rec.type != type) continue;
                    if (n.qv == n.qw && rec.tgt != *x) continue;
                    Match m;
                    m.map_vertex(n.qv, *x);
                    m.map_vertex(n.qw, rec.tgt);
                    m.map_edge(n.qe, he);
                    insert_max(out, std::move(m), phi);
                }
            }
            break;
        }
        case MsNode::Kind::BackwardNav: {
            const Id& type = n.query.edge(n.qe).type;
            for (const auto& [seed, phi] : dependency_result(c, n.deps.at(0))) {
                const Id* x = seed.vertex_image(n.qw);
                if (x == nullptr) continue;
                for (const Id& he : host.in_edges(*x)) {
                    const EdgeRec& rec = host.edge(he);
                    if (rec.type != type) continue;
                    if (n.qv == n.qw && rec.src != *x) continue;
                    Match m;
                    m.map_vertex(n.qw, *x);
                    m.map_vertex(n.qv, rec.src);
                    m.map_edge(n.qe, he);
                    insert_max(out, std::move(m), phi);
                }
            }
            break;
        }
        case MsNode::Kind::Join: {
            const MsResultSet& left = dependency_result(c, n.left());
            const MsResultSet& right = dependency_result(c, n.right());
            std::unordered_map<Match, std::vector<std::pair<const Match*, Marking>>, MatchHash>
                index;
            index.reserve(right.size());
            for (const auto& [r, phi] : right)
                index[restriction_key(r, n.overlap_vertices, n.overlap_edges)].emplace_back(&r,
                                                                                            phi);
            for (const auto& [l, phi_l] : left) {
                auto it = index.find(restriction_key(l, n.overlap_vertices, n.overlap_edges));
                if (it == index.end()) continue;
                for (const auto& [r, phi_r] : it->second) {
                    std::optional<Match> m = Match::merged(l, *r);
                    if (m) insert_max(out, std::move(*m), std::max(phi_l, phi_r));
                }
            }
            break;
        }
        case MsNode::Kind::Union: {
            for (const MsNode* dep : n.deps)
                for (const auto& [m, phi] : dependency_result(c, dep)) insert_max(out, m, phi);
            break;
        }
        case MsNode::Kind::Projection: {
            for (const auto& [m, phi] : dependency_result(c, n.deps.at(0))) {
                const Id* img = m.vertex_image(n.proj_in);
                if (img == nullptr) continue;
                Match projected;
                projected.map_vertex(n.proj_out, *img);
                insert_max(out, std::move(projected), phi);
            }
            break;
        }
        case MsNode::Kind::MarkAssign: {
            for (const auto& [m, phi] : dependency_result(c, n.deps.at(0))) {
                (void)phi;
                out.emplace(m, n.assign_value);
            }
            break;
        }
        case MsNode::Kind::MarkFilter: {
            for (const auto& [m, phi] : dependency_result(c, n.deps.at(0)))
                if (phi > n.filter_threshold) out.emplace(m, phi);
            break;
        }
        case MsNode::Kind::SemiJoin: {
            const MsResultSet& left = dependency_result(c, n.left());
            auto keys = right_keys_for(n, dependency_result(c, n.right()));
            for (const auto& [l, phi] : left)
                if (keys.count(left_key_for(n, l))) out.emplace(l, phi);
            break;
        }
        case MsNode::Kind::AntiJoin: {
            const MsResultSet& left = dependency_result(c, n.left());
            auto keys = right_keys_for(n, dependency_result(c, n.right()));
            for (const auto& [l, phi] : left)
                if (keys.count(left_key_for(n, l)) == 0) out.emplace(l, phi);
            break;
        }
        case MsNode::Kind::Translate: {
            for (const auto& [m, phi] : dependency_result(c, n.deps.at(0))) {
                std::optional<Match> t = translate_match(m, *n.modification, n.direction);
                if (t) insert_max(out, std::move(*t), phi);
            }
            break;
        }
        case MsNode::Kind::Dummy:
            break;
    }
    return out;
}

std::vector<Match> stripped_result_set(const MsNode* n, const MsConfiguration& c) {
    std::vector<Match> out;
    for (const auto& [m, phi] : c.result(n)) {
        (void)phi;
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool MsConfiguration::same_result_sets(const MsConfiguration& other,
                                       const std::vector<const MsNode*>& nodes) const {
    for (const MsNode* n : nodes)
        if (result(n) != other.result(n)) return false;
    return true;
}

namespace {

bool host_sensitive(MsNode::Kind kind) {
    switch (kind) {
        case MsNode::Kind::VertexInput:
        case MsNode::Kind::ForwardNav:
        case MsNode::Kind::BackwardNav:
        case MsNode::Kind::Translate:
            return true;
        default:
            return false;
    }
}

} // namespace

void execute_localized(std::span<MsNode* const> order, const TypedGraph& host,
                       const RelevantSubgraph& relevant, MsConfiguration& c,
                       const ExecutionTracer& tracer) {
    for (MsNode* n : order) {
        // Configurations are total: dependencies that never ran count as
        // empty result sets rather than errors.
        for (const MsNode* dep : n->deps) c.entries[dep];
        auto& entry = c.entries[n];
        bool stale = !entry.executed;
        if (!stale && host_sensitive(n->kind) && entry.host_epoch_at_exec != c.host_epoch)
            stale = true;
        if (!stale) {
            for (std::size_t i = 0; i < n->deps.size(); ++i) {
                auto dep_it = c.entries.find(n->deps[i]);
                std::uint64_t dep_version = dep_it == c.entries.end() ? 0 : dep_it->second.version;
                if (i >= entry.dep_versions_at_exec.size() ||
                    entry.dep_versions_at_exec[i] != dep_version) {
                    stale = true;
                    break;
                }
            }
        }
        if (!stale) continue;

        MsResultSet result = ms_target_result_set(*n, host, relevant, c);
        if (tracer) {
            std::size_t added = 0, removed = 0;
            for (const auto& [m, phi] : result) {
                auto it = entry.set.find(m);
                if (it == entry.set.end() || it->second != phi) ++added;
            }
            for (const auto& [m, phi] : entry.set) {
                auto it = result.find(m);
                if (it == result.end() || it->second != phi) ++removed;
            }
            tracer(*n, added, removed);
        }
        if (result != entry.set) {
            entry.set = std::move(result);
            ++entry.version;
        }
        entry.executed = true;
        entry.host_epoch_at_exec = c.host_epoch;
        entry.dep_versions_at_exec.clear();
        for (const MsNode* dep : n->deps) {
            auto dep_it = c.entries.find(dep);
            entry.dep_versions_at_exec.push_back(
                dep_it == c.entries.end() ? 0 : dep_it->second.version);
        }
    }
}

std::size_t ms_effective_size(const std::vector<const MsNode*>& nodes, const MsConfiguration& c) {
    std::size_t total = 0;
    for (const MsNode* n : nodes) {
        std::size_t match_size = n->query.vertex_count() + n->query.edge_count();
        total += c.result(n).size() * match_size;
    }
    return total;
}

std::size_t ms_total_tuples(const std::vector<const MsNode*>& nodes, const MsConfiguration& c) {
    std::size_t total = 0;
    for (const MsNode* n : nodes) total += c.result(n).size();
    return total;
}

} // namespace lrete
