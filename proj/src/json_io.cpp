#include "lrete/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lrete {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Io, "invalid JSON");
    return j;
}

std::shared_ptr<TypeGraph> parse_types(const json& j) {
    auto types = std::make_shared<TypeGraph>();
    if (!j.contains("types")) fail(ErrorKind::MalformedGraph, "graph file lacks types section");
    const json& t = j.at("types");
    for (const auto& v : t.value("vertices", json::array()))
        types->vertex_types.insert(v.get<std::string>());
    for (const auto& e : t.value("edges", json::array())) {
        types->edge_types[e.at("name").get<std::string>()] = {e.at("src").get<std::string>(),
                                                              e.at("tgt").get<std::string>()};
    }
    types->validate();
    return types;
}

TypedGraph parse_graph_body(const json& j, std::shared_ptr<const TypeGraph> types) {
    TypedGraph g(std::move(types));
    for (const auto& v : j.value("vertices", json::array()))
        g.add_vertex(v.at("id").get<std::string>(), v.at("type").get<std::string>());
    for (const auto& e : j.value("edges", json::array()))
        g.add_edge(e.at("id").get<std::string>(), e.at("type").get<std::string>(),
                   e.at("src").get<std::string>(), e.at("tgt").get<std::string>());
    return g;
}

RelevantSubgraph parse_relevant(const json& j, const TypedGraph& host) {
    RelevantSubgraph relevant;
    if (j.contains("relevant")) {
        const json& r = j.at("relevant");
        for (const auto& v : r.value("vertices", json::array()))
            relevant.vertex_ids.insert(v.get<std::string>());
        for (const auto& e : r.value("edges", json::array()))
            relevant.edge_ids.insert(e.get<std::string>());
    }
    relevant.validate(host);
    return relevant;
}

ordered_json types_to_json(const TypeGraph& types) {
    ordered_json t;
    t["vertices"] = ordered_json::array();
    for (const Id& v : types.vertex_types) t["vertices"].push_back(v);
    t["edges"] = ordered_json::array();
    for (const auto& [name, et] : types.edge_types)
        t["edges"].push_back({{"name", name}, {"src", et.src}, {"tgt", et.tgt}});
    return t;
}

ordered_json graph_body_to_json(const TypedGraph& g) {
    ordered_json j;
    j["types"] = types_to_json(g.types());
    j["vertices"] = ordered_json::array();
    for (const auto& [v, t] : g.vertices()) j["vertices"].push_back({{"id", v}, {"type", t}});
    j["edges"] = ordered_json::array();
    for (const auto& [e, rec] : g.edges())
        j["edges"].push_back(
            {{"id", e}, {"type", rec.type}, {"src", rec.src}, {"tgt", rec.tgt}});
    return j;
}

Match parse_match(const json& j) {
    Match m;
    for (const auto& [k, v] : j.value("vMap", json::object()).items())
        m.map_vertex(k, v.get<std::string>());
    for (const auto& [k, v] : j.value("eMap", json::object()).items())
        m.map_edge(k, v.get<std::string>());
    return m;
}

ordered_json match_to_json_obj(const Match& m) {
    ordered_json v = ordered_json::object();
    for (const auto& [q, h] : m.vertex_entries()) v[q] = h;
    ordered_json e = ordered_json::object();
    for (const auto& [q, h] : m.edge_entries()) e[q] = h;
    return ordered_json{{"vMap", std::move(v)}, {"eMap", std::move(e)}};
}

ConditionPtr parse_condition(const json& j, std::shared_ptr<const TypeGraph> types) {
    if (j.is_null()) return Condition::make_true();
    const std::string op = j.at("op").get<std::string>();
    if (op == "true") return Condition::make_true();
    if (op == "not") return Condition::make_not(parse_condition(j.at("child"), types));
    if (op == "and")
        return Condition::make_and(parse_condition(j.at("left"), types),
                                   parse_condition(j.at("right"), types));
    if (op == "exists") {
        TypedGraph target = parse_graph_body(j.at("target"), types);
        Match anchor = parse_match(j.at("anchor"));
        return Condition::make_exists(std::move(anchor), std::move(target),
                                      parse_condition(j.value("child", json()), types));
    }
    fail(ErrorKind::MalformedQuery, "unknown condition op: " + op);
}

ordered_json condition_to_json(const ConditionPtr& c) {
    if (!c) return ordered_json{{"op", "true"}};
    switch (c->kind) {
        case Condition::Kind::True:
            return ordered_json{{"op", "true"}};
        case Condition::Kind::Not:
            return ordered_json{{"op", "not"}, {"child", condition_to_json(c->left)}};
        case Condition::Kind::And:
            return ordered_json{{"op", "and"},
                                {"left", condition_to_json(c->left)},
                                {"right", condition_to_json(c->right)}};
        case Condition::Kind::Exists: {
            ordered_json target = graph_body_to_json(c->target);
            target.erase("types");
            return ordered_json{{"op", "exists"},
                                {"anchor", match_to_json_obj(c->anchor)},
                                {"target", std::move(target)},
                                {"child", condition_to_json(c->child)}};
        }
    }
    return ordered_json{{"op", "true"}};
}

} // namespace

GraphFile parse_graph_json(const std::string& text) {
    json j = parse(text);
    GraphFile file;
    auto types = parse_types(j);
    file.graph = parse_graph_body(j, types);
    file.relevant = parse_relevant(j, file.graph);
    return file;
}

std::string graph_to_json(const TypedGraph& graph, const RelevantSubgraph& relevant) {
    ordered_json j = graph_body_to_json(graph);
    ordered_json r;
    r["vertices"] = ordered_json::array();
    for (const Id& v : relevant.vertex_ids) r["vertices"].push_back(v);
    r["edges"] = ordered_json::array();
    for (const Id& e : relevant.edge_ids) r["edges"].push_back(e);
    j["relevant"] = std::move(r);
    return j.dump(2) + "\n";
}

ExtendedQuery parse_query_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("pattern")) fail(ErrorKind::MalformedQuery, "query file lacks pattern");
    auto types = parse_types(j.at("pattern"));
    ExtendedQuery q;
    q.pattern = parse_graph_body(j.at("pattern"), types);
    q.condition = parse_condition(j.value("condition", json()), types);
    return q;
}

std::string query_to_json(const ExtendedQuery& q) {
    ordered_json j;
    j["pattern"] = graph_body_to_json(q.pattern);
    j["condition"] = condition_to_json(q.condition);
    return j.dump(2) + "\n";
}

Changeset parse_changeset_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_array()) fail(ErrorKind::MalformedDelta, "changeset must be a JSON array");
    Changeset out;
    for (const json& op : j) {
        const std::string kind = op.at("op").get<std::string>();
        if (kind == "addVertex") {
            out.push_back(ChangeOp::add_vertex(op.at("id"), op.at("type")));
        } else if (kind == "addEdge") {
            out.push_back(
                ChangeOp::add_edge(op.at("id"), op.at("type"), op.at("src"), op.at("tgt")));
        } else if (kind == "removeVertex") {
            out.push_back(ChangeOp::remove_vertex(op.at("id")));
        } else if (kind == "removeEdge") {
            out.push_back(ChangeOp::remove_edge(op.at("id")));
        } else if (kind == "relevantAdd") {
            out.push_back(ChangeOp::relevant_add(op.at("id")));
        } else if (kind == "relevantRemove") {
            out.push_back(ChangeOp::relevant_remove(op.at("id")));
        } else {
            fail(ErrorKind::MalformedDelta, "unknown change op: " + kind);
        }
    }
    return out;
}

std::string changeset_to_json(const Changeset& changes) {
    ordered_json j = ordered_json::array();
    for (const ChangeOp& op : changes) {
        switch (op.kind) {
            case ChangeOp::Kind::AddVertex:
                j.push_back({{"op", "addVertex"}, {"id", op.id}, {"type", op.type}});
                break;
            case ChangeOp::Kind::AddEdge:
                j.push_back({{"op", "addEdge"},
                             {"id", op.id},
                             {"type", op.type},
                             {"src", op.src},
                             {"tgt", op.tgt}});
                break;
            case ChangeOp::Kind::RemoveVertex:
                j.push_back({{"op", "removeVertex"}, {"id", op.id}});
                break;
            case ChangeOp::Kind::RemoveEdge:
                j.push_back({{"op", "removeEdge"}, {"id", op.id}});
                break;
            case ChangeOp::Kind::RelevantAdd:
                j.push_back({{"op", "relevantAdd"}, {"id", op.id}});
                break;
            case ChangeOp::Kind::RelevantRemove:
                j.push_back({{"op", "relevantRemove"}, {"id", op.id}});
                break;
        }
    }
    return j.dump(2) + "\n";
}

std::string match_to_json(const Match& m) { return match_to_json_obj(m).dump(); }

std::string matches_to_json(const std::vector<Match>& matches) {
    std::vector<Match> sorted = matches;
    std::sort(sorted.begin(), sorted.end());
    ordered_json j = ordered_json::array();
    for (const Match& m : sorted) j.push_back(match_to_json_obj(m));
    return j.dump(2) + "\n";
}

std::string result_delta_to_json(const ResultDelta& delta) {
    std::vector<Match> removed = delta.removed;
    std::vector<Match> added = delta.added;
    std::sort(removed.begin(), removed.end());
    std::sort(added.begin(), added.end());
    ordered_json j;
    j["removed"] = ordered_json::array();
    for (const Match& m : removed) j["removed"].push_back(match_to_json_obj(m));
    j["added"] = ordered_json::array();
    for (const Match& m : added) j["added"].push_back(match_to_json_obj(m));
    return j.dump(2) + "\n";
}

std::string ms_results_to_json(const MsResultSet& result) {
    std::vector<std::pair<Match, Marking>> sorted(result.begin(), result.end());
    std::sort(sorted.begin(), sorted.end());
    ordered_json j = ordered_json::array();
    for (const auto& [m, phi] : sorted) {
        ordered_json entry = match_to_json_obj(m);
        if (phi == kInfinity)
            entry["marking"] = "inf";
        else
            entry["marking"] = phi;
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write file: " + path);
    out << content;
}

} // namespace lrete
