#include <map>
#include <sstream>

#include "lrete/match.hpp"
#include "lrete/modification.hpp"
#include "lrete/typed_graph.hpp"

namespace lrete {

bool is_edge_dominated(const TypedGraph& g) {
    std::map<Id, std::size_t> vertex_counts;
    for (const auto& [v, t] : g.vertices()) ++vertex_counts[t];
    std::map<Id, std::size_t> edge_counts;
    for (const auto& [e, rec] : g.edges()) ++edge_counts[rec.type];

    auto count_of = [](const std::map<Id, std::size_t>& counts, const Id& t) -> std::size_t {
        auto it = counts.find(t);
        return it == counts.end() ? 0 : it->second;
    };

    for (const auto& [name, et] : g.types().edge_types) {
        std::size_t bound =
            std::max(count_of(vertex_counts, et.src), count_of(vertex_counts, et.tgt));
        if (count_of(edge_counts, name) < bound) return false;
    }
    return true;
}

std::string Match::to_string() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [q, h] : v_) {
        if (!first) out << ", ";
        out << q << "->" << h;
        first = false;
    }
    for (const auto& [q, h] : e_) {
        if (!first) out << ", ";
        out << q << "=>" << h;
        first = false;
    }
    out << "}";
    return out.str();
}

bool check_morphism(const Morphism& m) {
    if (m.domain == nullptr || m.codomain == nullptr)
        fail(ErrorKind::MalformedMorphism, "morphism references no graphs");
    const TypedGraph& dom = *m.domain;
    const TypedGraph& cod = *m.codomain;

    for (const auto& [q, h] : m.map.vertex_entries()) {
        if (!dom.has_vertex(q))
            fail(ErrorKind::MalformedMorphism, "vMap domain id not a vertex: " + q);
        if (!cod.has_vertex(h))
            fail(ErrorKind::MalformedMorphism, "vMap image id not a vertex: " + h);
        if (dom.vertex_type(q) != cod.vertex_type(h)) return false;
    }
    for (const auto& [q, h] : m.map.edge_entries()) {
        if (!dom.has_edge(q))
            fail(ErrorKind::MalformedMorphism, "eMap domain id not an edge: " + q);
        if (!cod.has_edge(h))
            fail(ErrorKind::MalformedMorphism, "eMap image id not an edge: " + h);
        const EdgeRec& qe = dom.edge(q);
        const EdgeRec& he = cod.edge(h);
        if (qe.type != he.type) return false;
        // Commutation on the defined domain: a mapped edge needs mapped
        // endpoints with matching images.
        const Id* src_img = m.map.vertex_image(qe.src);
        const Id* tgt_img = m.map.vertex_image(qe.tgt);
        if (src_img == nullptr || tgt_img == nullptr) return false;
        if (*src_img != he.src || *tgt_img != he.tgt) return false;
    }
    if (m.total) {
        if (m.map.vertex_entries().size() != dom.vertex_count()) return false;
        if (m.map.edge_entries().size() != dom.edge_count()) return false;
    }
    return true;
}

bool is_subgraph_of(const TypedGraph& sub, const TypedGraph& g) {
    for (const auto& [v, t] : sub.vertices())
        if (!g.has_vertex(v) || g.vertex_type(v) != t) return false;
    for (const auto& [e, rec] : sub.edges())
        if (!g.has_edge(e) || !(g.edge(e) == rec)) return false;
    return true;
}

Morphism restrict_morphism(const Morphism& m, const TypedGraph& sub) {
    if (m.domain == nullptr) fail(ErrorKind::MalformedMorphism, "morphism references no graphs");
    if (!is_subgraph_of(sub, *m.domain))
        fail(ErrorKind::InvalidSubgraph, "restriction target is not a subgraph of the domain");

    std::set<Id> vs, es;
    for (const auto& [v, t] : sub.vertices()) vs.insert(v);
    for (const auto& [e, rec] : sub.edges()) es.insert(e);

    Morphism out;
    out.domain = m.domain;
    out.codomain = m.codomain;
    out.map = m.map.restricted_to(vs, es);
    out.total = m.total && sub.vertex_count() == m.domain->vertex_count() &&
                sub.edge_count() == m.domain->edge_count();
    return out;
}

void GraphModification::validate() const {
    for (const Id& v : deleted_vertices) {
        if (!source.has_vertex(v))
            fail(ErrorKind::MalformedModification, "deleted vertex not in source: " + v);
        if (target.has_element(v))
            fail(ErrorKind::MalformedModification, "deleted id present in target: " + v);
        for (const auto& [e, rec] : source.edges())
            if ((rec.src == v || rec.tgt == v) && deleted_edges.count(e) == 0)
                fail(ErrorKind::MalformedModification,
                     "vertex " + v + " deleted without incident edge " + e);
    }
    for (const Id& e : deleted_edges) {
        if (!source.has_edge(e))
            fail(ErrorKind::MalformedModification, "deleted edge not in source: " + e);
        if (target.has_element(e))
            fail(ErrorKind::MalformedModification, "deleted id present in target: " + e);
    }
    for (const Id& v : created_vertices) {
        if (!target.has_vertex(v))
            fail(ErrorKind::MalformedModification, "created vertex not in target: " + v);
        if (source.has_element(v))
            fail(ErrorKind::MalformedModification, "created id present in source: " + v);
    }
    for (const Id& e : created_edges) {
        if (!target.has_edge(e))
            fail(ErrorKind::MalformedModification, "created edge not in target: " + e);
        if (source.has_element(e))
            fail(ErrorKind::MalformedModification, "created id present in source: " + e);
    }
    // Retained elements correspond by id and must preserve structure.
    for (const auto& [v, t] : source.vertices()) {
        if (deleted_vertices.count(v)) continue;
        if (!target.has_vertex(v) || target.vertex_type(v) != t)
            fail(ErrorKind::MalformedModification, "retained vertex changed: " + v);
    }
    for (const auto& [e, rec] : source.edges()) {
        if (deleted_edges.count(e)) continue;
        if (!target.has_edge(e) || !(target.edge(e) == rec))
            fail(ErrorKind::MalformedModification, "retained edge changed: " + e);
    }
    for (const auto& [v, t] : target.vertices())
        if (!source.has_vertex(v) && created_vertices.count(v) == 0)
            fail(ErrorKind::MalformedModification, "target vertex neither retained nor created: " + v);
    for (const auto& [e, rec] : target.edges())
        if (!source.has_edge(e) && created_edges.count(e) == 0)
            fail(ErrorKind::MalformedModification, "target edge neither retained nor created: " + e);
}

TypedGraph apply_modification(const GraphModification& mod) {
    mod.validate();
    return mod.target;
}

std::optional<Match> translate_match(const Match& m, const GraphModification& mod,
                                     TranslateDirection direction) {
    const TypedGraph& from = direction == TranslateDirection::ToSource ? mod.target : mod.source;
    const TypedGraph& to = direction == TranslateDirection::ToSource ? mod.source : mod.target;
    for (const auto& [q, h] : m.vertex_entries()) {
        (void)q;
        if (!from.has_vertex(h)) fail(ErrorKind::MalformedMorphism, "match vertex not in graph: " + h);
        if (!to.has_vertex(h)) return std::nullopt;
    }
    for (const auto& [q, h] : m.edge_entries()) {
        (void)q;
        if (!from.has_edge(h)) fail(ErrorKind::MalformedMorphism, "match edge not in graph: " + h);
        if (!to.has_edge(h)) return std::nullopt;
    }
    // Retained ids are stable, so the composed morphism is the same
    // mapping read into the other graph.
    return m;
}

namespace {

// Outside part H_s of a host under a relevant subgraph: all non-relevant
// edges plus all vertices except interior relevant ones. Border vertices
// (relevant, but incident to a non-relevant edge) are shared.
struct OutsidePart {
    std::set<Id> vertices;
    std::set<Id> edges;
};

OutsidePart outside_part(const TypedGraph& g, const RelevantSubgraph& relevant) {
    OutsidePart out;
    for (const auto& [e, rec] : g.edges())
        if (!relevant.contains_edge(e)) out.edges.insert(e);
    std::set<Id> border;
    for (const Id& e : out.edges) {
        const EdgeRec& rec = g.edge(e);
        if (relevant.contains_vertex(rec.src)) border.insert(rec.src);
        if (relevant.contains_vertex(rec.tgt)) border.insert(rec.tgt);
    }
    for (const auto& [v, t] : g.vertices())
        if (!relevant.contains_vertex(v) || border.count(v)) out.vertices.insert(v);
    return out;
}

} // namespace

bool is_subgraph_restricted(const GraphModification& mod, const RelevantSubgraph& relevant_src,
                            const RelevantSubgraph& relevant_tgt) {
    mod.validate();
    relevant_src.validate(mod.source);
    relevant_tgt.validate(mod.target);

    // The outside parts must correspond isomorphically; with id-stable
    // correspondence that is equality of id sets plus equal structure.
    OutsidePart src_out = outside_part(mod.source, relevant_src);
    OutsidePart tgt_out = outside_part(mod.target, relevant_tgt);
    if (src_out.vertices != tgt_out.vertices || src_out.edges != tgt_out.edges) return false;
    for (const Id& v : src_out.vertices)
        if (mod.source.vertex_type(v) != mod.target.vertex_type(v)) return false;
    for (const Id& e : src_out.edges)
        if (!(mod.source.edge(e) == mod.target.edge(e))) return false;

    // Retained relevant elements must be mapped into the other side's
    // relevant subgraph, in both directions.
    for (const Id& v : relevant_src.vertex_ids)
        if (!mod.deletes(v) && !relevant_tgt.contains_vertex(v)) return false;
    for (const Id& e : relevant_src.edge_ids)
        if (!mod.deletes(e) && !relevant_tgt.contains_edge(e)) return false;
    for (const Id& v : relevant_tgt.vertex_ids)
        if (!mod.creates(v) && !relevant_src.contains_vertex(v)) return false;
    for (const Id& e : relevant_tgt.edge_ids)
        if (!mod.creates(e) && !relevant_src.contains_edge(e)) return false;

    return true;
}

} // namespace lrete
