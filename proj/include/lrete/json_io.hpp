#pragma once

#include <iosfwd>
#include <string>

#include "lrete/changeset.hpp"
#include "lrete/ms_rete.hpp"
#include "lrete/query.hpp"
#include "lrete/result_delta.hpp"

namespace lrete {

struct GraphFile {
    TypedGraph graph;
    RelevantSubgraph relevant;
};

/// Graph file: {"types":{"vertices":[...],"edges":[{"name","src","tgt"}]},
/// "vertices":[{"id","type"}],"edges":[{"id","type","src","tgt"}],
/// "relevant":{"vertices":[...],"edges":[...]}}
GraphFile parse_graph_json(const std::string& text);
std::string graph_to_json(const TypedGraph& graph, const RelevantSubgraph& relevant);

/// Query file: {"pattern":<graph>,"condition":{"op":...}} with condition
/// objects true/not/and/exists; exists carries anchor vMap/eMap, target
/// graph, and child condition. The pattern and targets share the
/// pattern's type section.
ExtendedQuery parse_query_json(const std::string& text);
std::string query_to_json(const ExtendedQuery& q);

/// Changeset file: ordered list of {"op":"addVertex|addEdge|removeVertex|
/// removeEdge|relevantAdd|relevantRemove", ...}.
Changeset parse_changeset_json(const std::string& text);
std::string changeset_to_json(const Changeset& changes);

std::string match_to_json(const Match& m);
std::string matches_to_json(const std::vector<Match>& matches);
std::string result_delta_to_json(const ResultDelta& delta);

/// Production tuples with markings, sorted for stable output.
std::string ms_results_to_json(const MsResultSet& result);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace lrete
