#pragma once

#include <map>
#include <set>
#include <string>

#include "lrete/error.hpp"

namespace lrete {

/// Element identifiers are opaque strings, unique per graph and stable
/// across modifications for retained elements.
using Id = std::string;

struct EdgeType {
    Id src;
    Id tgt;

    bool operator==(const EdgeType&) const = default;
};

/// Schema shared by all graphs of a model: vertex type names and edge
/// types with fixed endpoint types.
struct TypeGraph {
    std::set<Id> vertex_types;
    std::map<Id, EdgeType> edge_types;

    bool has_vertex_type(const Id& t) const { return vertex_types.count(t) > 0; }
    bool has_edge_type(const Id& t) const { return edge_types.count(t) > 0; }

    const EdgeType& edge_type(const Id& t) const {
        auto it = edge_types.find(t);
        if (it == edge_types.end())
            fail(ErrorKind::MalformedGraph, "unknown edge type: " + t);
        return it->second;
    }

    void validate() const {
        for (const auto& [name, et] : edge_types) {
            if (!has_vertex_type(et.src) || !has_vertex_type(et.tgt))
                fail(ErrorKind::MalformedGraph,
                     "edge type " + name + " references undeclared vertex type");
        }
    }

    bool operator==(const TypeGraph&) const = default;
};

} // namespace lrete
