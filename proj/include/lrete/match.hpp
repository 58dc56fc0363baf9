#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lrete/typed_graph.hpp"

namespace lrete {

/// A (possibly partial) element mapping from a query graph into a host
/// graph, stored as sorted (query id, host id) pair lists for vertices
/// and edges.
class Match {
public:
    using Entry = std::pair<Id, Id>;

    Match() = default;

    void map_vertex(const Id& from, const Id& to) { insert(v_, from, to); }
    void map_edge(const Id& from, const Id& to) { insert(e_, from, to); }

    const std::vector<Entry>& vertex_entries() const { return v_; }
    const std::vector<Entry>& edge_entries() const { return e_; }

    const Id* vertex_image(const Id& from) const { return find(v_, from); }
    const Id* edge_image(const Id& from) const { return find(e_, from); }

    bool maps_vertex(const Id& from) const { return vertex_image(from) != nullptr; }
    bool maps_edge(const Id& from) const { return edge_image(from) != nullptr; }

    std::size_t size() const { return v_.size() + e_.size(); }
    bool empty() const { return v_.empty() && e_.empty(); }

    /// Restriction to element id sets (identity on the kept entries).
    Match restricted_to(const std::set<Id>& vertex_ids, const std::set<Id>& edge_ids) const {
        Match out;
        for (const auto& [q, h] : v_)
            if (vertex_ids.count(q)) out.v_.emplace_back(q, h);
        for (const auto& [q, h] : e_)
            if (edge_ids.count(q)) out.e_.emplace_back(q, h);
        return out;
    }

    /// Union of two compatible mappings; nullopt on conflicting images.
    static std::optional<Match> merged(const Match& a, const Match& b) {
        Match out;
        if (!merge_into(out.v_, a.v_, b.v_)) return std::nullopt;
        if (!merge_into(out.e_, a.e_, b.e_)) return std::nullopt;
        return out;
    }

    bool image_touches(const std::set<Id>& host_vertex_ids) const {
        for (const auto& [q, h] : v_)
            if (host_vertex_ids.count(h)) return true;
        return false;
    }

    bool operator==(const Match&) const = default;
    auto operator<=>(const Match&) const = default;

    std::size_t hash_value() const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](const std::vector<Entry>& entries) {
            for (const auto& [a, b] : entries) {
                for (char c : a) { h ^= static_cast<unsigned char>(c); h *= 1099511628211ull; }
                h ^= 0x3a; h *= 1099511628211ull;
                for (char c : b) { h ^= static_cast<unsigned char>(c); h *= 1099511628211ull; }
                h ^= 0x7c; h *= 1099511628211ull;
            }
        };
        mix(v_);
        mix(e_);
        return h;
    }

    std::string to_string() const;

private:
    static void insert(std::vector<Entry>& entries, const Id& from, const Id& to) {
        auto it = std::lower_bound(entries.begin(), entries.end(), from,
                                   [](const Entry& e, const Id& k) { return e.first < k; });
        if (it != entries.end() && it->first == from) {
            it->second = to;
        } else {
            entries.insert(it, {from, to});
        }
    }

    static const Id* find(const std::vector<Entry>& entries, const Id& from) {
        auto it = std::lower_bound(entries.begin(), entries.end(), from,
                                   [](const Entry& e, const Id& k) { return e.first < k; });
        if (it != entries.end() && it->first == from) return &it->second;
        return nullptr;
    }

    static bool merge_into(std::vector<Entry>& out, const std::vector<Entry>& a,
                           const std::vector<Entry>& b) {
        out.reserve(a.size() + b.size());
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (ia->first < ib->first) {
                out.push_back(*ia++);
            } else if (ib->first < ia->first) {
                out.push_back(*ib++);
            } else {
                if (ia->second != ib->second) return false;
                out.push_back(*ia);
                ++ia;
                ++ib;
            }
        }
        out.insert(out.end(), ia, a.end());
        out.insert(out.end(), ib, b.end());
        return true;
    }

    std::vector<Entry> v_;
    std::vector<Entry> e_;
};

struct MatchHash {
    std::size_t operator()(const Match& m) const { return m.hash_value(); }
};

/// A morphism record for the graph-core operations: the mapping plus its
/// domain and codomain graphs and the intended totality.
struct Morphism {
    const TypedGraph* domain = nullptr;
    const TypedGraph* codomain = nullptr;
    Match map;
    bool total = true;
};

/// Structure preservation, type preservation, and (for total morphisms)
/// totality. Throws on ids that do not exist in the referenced graphs.
bool check_morphism(const Morphism& m);

/// Restriction of m to a subgraph of its domain. The result is defined
/// exactly on `sub` and flagged partial unless `sub` equals the domain.
Morphism restrict_morphism(const Morphism& m, const TypedGraph& sub);

/// sub is a subgraph of g: all elements present with identical typing
/// and structure.
bool is_subgraph_of(const TypedGraph& sub, const TypedGraph& g);

/// Whether some vertex image of m lies in the relevant subgraph. By
/// incidence closure this is equivalent to the full image touching it.
inline bool touches(const Match& m, const RelevantSubgraph& relevant) {
    return m.image_touches(relevant.vertex_ids);
}

} // namespace lrete
