#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lrete/type_graph.hpp"

namespace lrete {

struct EdgeRec {
    Id type;
    Id src;
    Id tgt;

    bool operator==(const EdgeRec&) const = default;
};

/// In-memory typed graph with bidirectional adjacency indices.
///
/// Single-writer; copies act as immutable snapshots. The in/out indices
/// mirror the edge table exactly, which gives the reverse navigability
/// required by backward navigation nodes.
class TypedGraph {
public:
    TypedGraph() : types_(std::make_shared<TypeGraph>()) {}
    explicit TypedGraph(std::shared_ptr<const TypeGraph> types) : types_(std::move(types)) {}

    const TypeGraph& types() const { return *types_; }
    std::shared_ptr<const TypeGraph> types_ptr() const { return types_; }

    const std::map<Id, Id>& vertices() const { return vertices_; }
    const std::map<Id, EdgeRec>& edges() const { return edges_; }

    bool has_vertex(const Id& v) const { return vertices_.count(v) > 0; }
    bool has_edge(const Id& e) const { return edges_.count(e) > 0; }
    bool has_element(const Id& x) const { return has_vertex(x) || has_edge(x); }

    const Id& vertex_type(const Id& v) const {
        auto it = vertices_.find(v);
        if (it == vertices_.end()) fail(ErrorKind::MalformedGraph, "unknown vertex: " + v);
        return it->second;
    }

    const EdgeRec& edge(const Id& e) const {
        auto it = edges_.find(e);
        if (it == edges_.end()) fail(ErrorKind::MalformedGraph, "unknown edge: " + e);
        return it->second;
    }

    const std::set<Id>& out_edges(const Id& v) const { return index_of(out_index_, v); }
    const std::set<Id>& in_edges(const Id& v) const { return index_of(in_index_, v); }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t element_count() const { return vertices_.size() + edges_.size(); }

    void add_vertex(const Id& v, const Id& type) {
        if (!types_->has_vertex_type(type))
            fail(ErrorKind::MalformedGraph, "undeclared vertex type: " + type);
        if (has_element(v))
            fail(ErrorKind::MalformedGraph, "duplicate element id: " + v);
        vertices_.emplace(v, type);
    }

    void add_edge(const Id& e, const Id& type, const Id& src, const Id& tgt) {
        const EdgeType& et = types_->edge_type(type);
        if (has_element(e))
            fail(ErrorKind::MalformedGraph, "duplicate element id: " + e);
        if (!has_vertex(src) || !has_vertex(tgt))
            fail(ErrorKind::MalformedGraph, "edge " + e + " has dangling endpoint");
        if (vertex_type(src) != et.src || vertex_type(tgt) != et.tgt)
            fail(ErrorKind::MalformedGraph, "edge " + e + " violates endpoint typing");
        edges_.emplace(e, EdgeRec{type, src, tgt});
        out_index_[src].insert(e);
        in_index_[tgt].insert(e);
    }

    void remove_edge(const Id& e) {
        auto it = edges_.find(e);
        if (it == edges_.end()) fail(ErrorKind::MalformedGraph, "unknown edge: " + e);
        erase_index(out_index_, it->second.src, e);
        erase_index(in_index_, it->second.tgt, e);
        edges_.erase(it);
    }

    /// Removes a vertex and every incident edge.
    void remove_vertex(const Id& v) {
        if (!has_vertex(v)) fail(ErrorKind::MalformedGraph, "unknown vertex: " + v);
        std::vector<Id> incident(out_edges(v).begin(), out_edges(v).end());
        incident.insert(incident.end(), in_edges(v).begin(), in_edges(v).end());
        for (const Id& e : incident)
            if (has_edge(e)) remove_edge(e);
        vertices_.erase(v);
        out_index_.erase(v);
        in_index_.erase(v);
    }

    /// Every edge indexed under its endpoints, no stale entries.
    bool index_coherent() const {
        std::size_t indexed = 0;
        for (const auto& [v, es] : out_index_) {
            for (const Id& e : es) {
                auto it = edges_.find(e);
                if (it == edges_.end() || it->second.src != v) return false;
                ++indexed;
            }
        }
        if (indexed != edges_.size()) return false;
        indexed = 0;
        for (const auto& [v, es] : in_index_) {
            for (const Id& e : es) {
                auto it = edges_.find(e);
                if (it == edges_.end() || it->second.tgt != v) return false;
                ++indexed;
            }
        }
        return indexed == edges_.size();
    }

    bool same_elements(const TypedGraph& other) const {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    static const std::set<Id>& index_of(const std::map<Id, std::set<Id>>& index, const Id& v) {
        static const std::set<Id> empty;
        auto it = index.find(v);
        return it == index.end() ? empty : it->second;
    }

    static void erase_index(std::map<Id, std::set<Id>>& index, const Id& v, const Id& e) {
        auto it = index.find(v);
        if (it != index.end()) {
            it->second.erase(e);
            if (it->second.empty()) index.erase(it);
        }
    }

    std::shared_ptr<const TypeGraph> types_;
    std::map<Id, Id> vertices_;
    std::map<Id, EdgeRec> edges_;
    std::map<Id, std::set<Id>> out_index_;
    std::map<Id, std::set<Id>> in_index_;
};

/// Vertex and edge ids of the relevant subgraph H_p of some host graph.
/// Closed under incidence: an edge may only be relevant if both its
/// endpoints are.
struct RelevantSubgraph {
    std::set<Id> vertex_ids;
    std::set<Id> edge_ids;

    bool contains_vertex(const Id& v) const { return vertex_ids.count(v) > 0; }
    bool contains_edge(const Id& e) const { return edge_ids.count(e) > 0; }
    bool empty() const { return vertex_ids.empty() && edge_ids.empty(); }

    void validate(const TypedGraph& host) const {
        for (const Id& v : vertex_ids)
            if (!host.has_vertex(v))
                fail(ErrorKind::InvalidSubgraph, "relevant vertex not in host: " + v);
        for (const Id& e : edge_ids) {
            if (!host.has_edge(e))
                fail(ErrorKind::InvalidSubgraph, "relevant edge not in host: " + e);
            const EdgeRec& rec = host.edge(e);
            if (!contains_vertex(rec.src) || !contains_vertex(rec.tgt))
                fail(ErrorKind::InvalidSubgraph,
                     "relevant subgraph not incidence-closed at edge " + e);
        }
    }

    bool operator==(const RelevantSubgraph&) const = default;
};

/// An edge type dominates when it has at least as many instances as
/// either of its endpoint types has vertices; a graph is edge-dominated
/// when every edge type dominates.
bool is_edge_dominated(const TypedGraph& g);

} // namespace lrete
