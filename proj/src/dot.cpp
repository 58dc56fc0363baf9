#include "lrete/dot.hpp"

#include <algorithm>
#include <sstream>

namespace lrete {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string query_summary(const TypedGraph& q) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [v, t] : q.vertices()) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    for (const auto& [e, rec] : q.edges()) out << ";" << e;
    return out.str();
}

} // namespace

std::string dot_dump(const ReteNet& net) {
    std::ostringstream out;
    out << "digraph rete {\n  rankdir=BT;\n";
    for (const ReteNode& n : net.nodes) {
        out << "  n" << n.id << " [label=\"" << escape(n.label()) << "\\nq=" << escape(query_summary(n.query))
            << "\\nh=" << n.height << "\"";
        if (&n == net.production) out << ", shape=doubleoctagon";
        out << "];\n";
    }
    for (const ReteNode& n : net.nodes) {
        if (n.left != nullptr) out << "  n" << n.id << " -> n" << n.left->id << ";\n";
        if (n.right != nullptr) out << "  n" << n.id << " -> n" << n.right->id << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string dot_dump(const MsNet& net, const MsConfiguration* config) {
    std::ostringstream out;
    out << "digraph ms_rete {\n  rankdir=BT;\n";
    for (const MsNode& n : net.nodes) {
        out << "  n" << n.id << " [label=\"" << escape(n.label()) << "\\nq=" << escape(query_summary(n.query))
            << "\\nh=" << n.height;
        if (config != nullptr) {
            std::vector<std::pair<Match, Marking>> tuples(config->result(&n).begin(),
                                                          config->result(&n).end());
            std::sort(tuples.begin(), tuples.end());
            for (const auto& [m, phi] : tuples)
                out << "\\n" << escape(m.to_string()) << " : " << marking_to_string(phi);
        }
        out << "\"";
        if (&n == net.production) out << ", shape=doubleoctagon";
        out << "];\n";
    }
    for (const MsNode& n : net.nodes)
        for (const MsNode* dep : n.deps) out << "  n" << n.id << " -> n" << dep->id << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace lrete
