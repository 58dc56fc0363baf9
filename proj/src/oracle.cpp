#include "lrete/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lrete::oracle {

namespace {

// Vertex assignment order: breadth-first from the first vertex so each
// assigned vertex (after the first) has an already-assigned neighbor to
// prune against.
std::vector<Id> assignment_order(const TypedGraph& q) {
    std::vector<Id> order;
    std::set<Id> seen;
    for (const auto& [start, t] : q.vertices()) {
        if (seen.count(start)) continue;
        std::vector<Id> frontier{start};
        seen.insert(start);
        while (!frontier.empty()) {
            Id v = frontier.front();
            frontier.erase(frontier.begin());
            order.push_back(v);
            auto follow = [&](const Id& w) {
                if (seen.insert(w).second) frontier.push_back(w);
            };
            for (const Id& e : q.out_edges(v)) follow(q.edge(e).tgt);
            for (const Id& e : q.in_edges(v)) follow(q.edge(e).src);
        }
    }
    return order;
}

bool edge_candidate_exists(const TypedGraph& host, const Id& src_img, const Id& tgt_img,
                           const Id& type) {
    for (const Id& he : host.out_edges(src_img)) {
        const EdgeRec& rec = host.edge(he);
        if (rec.type == type && rec.tgt == tgt_img) return true;
    }
    return false;
}

} // namespace

std::vector<Match> enumerate_matches(const TypedGraph& q, const TypedGraph& host, bool injective) {
    std::vector<Match> results;
    if (q.vertex_count() == 0) return results;

    std::vector<Id> order = assignment_order(q);
    std::map<Id, Id> assignment;
    std::set<Id> used_vertices;

    std::vector<Id> edge_ids;
    for (const auto& [e, rec] : q.edges()) edge_ids.push_back(e);

    // After all vertices are fixed, pick host edges for every query edge
    // independently (parallel host edges yield distinct matches).
    std::function<void(std::size_t, Match)> assign_edges = [&](std::size_t i, Match partial) {
        if (i == edge_ids.size()) {
            results.push_back(std::move(partial));
            return;
        }
        const Id& qe = edge_ids[i];
        const EdgeRec& rec = q.edge(qe);
        const Id& src_img = assignment.at(rec.src);
        const Id& tgt_img = assignment.at(rec.tgt);
        for (const Id& he : host.out_edges(src_img)) {
            const EdgeRec& hrec = host.edge(he);
            if (hrec.type != rec.type || hrec.tgt != tgt_img) continue;
            if (injective && partial.edge_entries().end() !=
                                 std::find_if(partial.edge_entries().begin(),
                                              partial.edge_entries().end(),
                                              [&](const auto& p) { return p.second == he; }))
                continue;
            Match next = partial;
            next.map_edge(qe, he);
            assign_edges(i + 1, std::move(next));
        }
    };

    std::function<void(std::size_t)> assign_vertices = [&](std::size_t i) {
        if (i == order.size()) {
            Match base;
            for (const auto& [qv, hv] : assignment) base.map_vertex(qv, hv);
            assign_edges(0, std::move(base));
            return;
        }
        const Id& qv = order[i];
        const Id& qt = q.vertex_type(qv);
        for (const auto& [hv, ht] : host.vertices()) {
            if (ht != qt) continue;
            if (injective && used_vertices.count(hv)) continue;
            bool feasible = true;
            // Prune on query edges with both endpoints assigned.
            for (const auto& [qe, rec] : q.edges()) {
                const Id* s = rec.src == qv ? &hv : (assignment.count(rec.src) ? &assignment.at(rec.src) : nullptr);
                const Id* t = rec.tgt == qv ? &hv : (assignment.count(rec.tgt) ? &assignment.at(rec.tgt) : nullptr);
                if ((rec.src == qv || rec.tgt == qv) && s != nullptr && t != nullptr &&
                    !edge_candidate_exists(host, *s, *t, rec.type)) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            assignment[qv] = hv;
            if (injective) used_vertices.insert(hv);
            assign_vertices(i + 1);
            assignment.erase(qv);
            if (injective) used_vertices.erase(hv);
        }
    };

    assign_vertices(0);
    return results;
}

namespace {

bool anchor_compatible(const Match& m, const Match& extension, const Match& anchor) {
    for (const auto& [qv, tv] : anchor.vertex_entries()) {
        const Id* outer = m.vertex_image(qv);
        const Id* inner = extension.vertex_image(tv);
        if (outer == nullptr || inner == nullptr || *outer != *inner) return false;
    }
    for (const auto& [qe, te] : anchor.edge_entries()) {
        const Id* outer = m.edge_image(qe);
        const Id* inner = extension.edge_image(te);
        if (outer == nullptr || inner == nullptr || *outer != *inner) return false;
    }
    return true;
}

} // namespace

bool eval_condition(const Match& m, const TypedGraph& context, const ConditionPtr& condition,
                    const TypedGraph& host) {
    if (!condition) return true;
    switch (condition->kind) {
        case Condition::Kind::True:
            return true;
        case Condition::Kind::Not:
            return !eval_condition(m, context, condition->left, host);
        case Condition::Kind::And:
            return eval_condition(m, context, condition->left, host) &&
                   eval_condition(m, context, condition->right, host);
        case Condition::Kind::Exists: {
            if (m.vertex_entries().size() != context.vertex_count() ||
                m.edge_entries().size() != context.edge_count())
                fail(ErrorKind::MalformedQuery, "condition evaluated on non-total context match");
            for (const Match& ext : enumerate_matches(condition->target, host)) {
                if (anchor_compatible(m, ext, condition->anchor) &&
                    eval_condition(ext, condition->target, condition->child, host))
                    return true;
            }
            return false;
        }
    }
    return false;
}

bool is_satisfaction_dependent(const Match& m, const TypedGraph& context,
                               const ConditionPtr& condition, const TypedGraph& host,
                               const RelevantSubgraph& relevant) {
    if (!condition) return false;
    switch (condition->kind) {
        case Condition::Kind::True:
            return false;
        case Condition::Kind::Not:
            return is_satisfaction_dependent(m, context, condition->left, host, relevant);
        case Condition::Kind::And:
            return is_satisfaction_dependent(m, context, condition->left, host, relevant) ||
                   is_satisfaction_dependent(m, context, condition->right, host, relevant);
        case Condition::Kind::Exists: {
            for (const Match& ext : enumerate_matches(condition->target, host)) {
                if (!anchor_compatible(m, ext, condition->anchor)) continue;
                if (touches(ext, relevant)) return true;
                if (is_satisfaction_dependent(ext, condition->target, condition->child, host,
                                              relevant))
                    return true;
            }
            return false;
        }
    }
    return false;
}

OracleReport check_completeness(const std::vector<Match>& result, const TypedGraph& q,
                                const TypedGraph& host, const RelevantSubgraph& relevant) {
    OracleReport report;
    std::set<Match> have(result.begin(), result.end());
    for (const Match& m : enumerate_matches(q, host)) {
        if (touches(m, relevant) && have.count(m) == 0)
            report.violations.emplace_back("missing match touching relevant subgraph", m);
    }
    std::set<Match> all;
    for (const Match& m : enumerate_matches(q, host)) all.insert(m);
    for (const Match& m : result)
        if (all.count(m) == 0) report.violations.emplace_back("result element is not a match", m);
    return report;
}

OracleReport check_correctness(const std::vector<Match>& result, const ExtendedQuery& q,
                               const TypedGraph& host, const RelevantSubgraph& relevant) {
    OracleReport report;
    std::set<Match> satisfying;
    for (const Match& m : enumerate_matches(q.pattern, host))
        if (eval_condition(m, q.pattern, q.condition, host)) satisfying.insert(m);

    std::set<Match> have(result.begin(), result.end());
    for (const Match& m : result)
        if (satisfying.count(m) == 0)
            report.violations.emplace_back("result contains non-satisfying match", m);
    for (const Match& m : satisfying)
        if (touches(m, relevant) && have.count(m) == 0)
            report.violations.emplace_back("missing satisfying match touching relevant subgraph", m);
    return report;
}

ResultDelta recompute_delta(const ExtendedQuery& q, const GraphModification& mod) {
    mod.validate();
    std::set<Match> src_satisfying, tgt_satisfying;
    for (const Match& m : enumerate_matches(q.pattern, mod.source))
        if (eval_condition(m, q.pattern, q.condition, mod.source)) src_satisfying.insert(m);
    for (const Match& m : enumerate_matches(q.pattern, mod.target))
        if (eval_condition(m, q.pattern, q.condition, mod.target)) tgt_satisfying.insert(m);

    ResultDelta delta;
    for (const Match& m : src_satisfying) {
        std::optional<Match> counterpart = translate_match(m, mod, TranslateDirection::ToTarget);
        if (!counterpart || tgt_satisfying.count(*counterpart) == 0) delta.removed.push_back(m);
    }
    for (const Match& m : tgt_satisfying) {
        std::optional<Match> counterpart = translate_match(m, mod, TranslateDirection::ToSource);
        if (!counterpart || src_satisfying.count(*counterpart) == 0) delta.added.push_back(m);
    }
    return delta;
}

} // namespace lrete::oracle
