#include "lrete/query.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace lrete {

ConditionPtr Condition::make_true() {
    auto c = std::make_shared<Condition>();
    c->kind = Kind::True;
    return c;
}

ConditionPtr Condition::make_not(ConditionPtr child) {
    auto c = std::make_shared<Condition>();
    c->kind = Kind::Not;
    c->left = std::move(child);
    return c;
}

ConditionPtr Condition::make_and(ConditionPtr left, ConditionPtr right) {
    auto c = std::make_shared<Condition>();
    c->kind = Kind::And;
    c->left = std::move(left);
    c->right = std::move(right);
    return c;
}

ConditionPtr Condition::make_exists(Match anchor, TypedGraph target, ConditionPtr child) {
    auto c = std::make_shared<Condition>();
    c->kind = Kind::Exists;
    c->anchor = std::move(anchor);
    c->target = std::move(target);
    c->child = std::move(child);
    return c;
}

bool anchor_is_total(const Match& anchor, const TypedGraph& pattern) {
    return anchor.vertex_entries().size() == pattern.vertex_count() &&
           anchor.edge_entries().size() == pattern.edge_count();
}

bool is_weakly_connected(const TypedGraph& g) {
    if (g.vertex_count() == 0) return false;
    std::set<Id> seen;
    std::deque<Id> frontier{g.vertices().begin()->first};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        Id v = frontier.front();
        frontier.pop_front();
        auto follow = [&](const Id& w) {
            if (seen.insert(w).second) frontier.push_back(w);
        };
        for (const Id& e : g.out_edges(v)) follow(g.edge(e).tgt);
        for (const Id& e : g.in_edges(v)) follow(g.edge(e).src);
    }
    return seen.size() == g.vertex_count();
}

namespace {

void validate_pattern(const TypedGraph& q, const std::string& where,
                      std::vector<std::string>& out) {
    if (q.vertex_count() == 0) {
        out.push_back(where + ": empty pattern");
        return;
    }
    if (!is_weakly_connected(q)) out.push_back(where + ": pattern not weakly connected");
    if (q.edge_count() == 0 && q.vertex_count() != 1)
        out.push_back(where + ": edgeless pattern must be a single vertex");
}

void validate_anchor(const Match& anchor, const TypedGraph& context, const TypedGraph& target,
                     const std::string& where, std::vector<std::string>& out) {
    std::set<Id> v_images, e_images;
    for (const auto& [q, h] : anchor.vertex_entries()) {
        if (!context.has_vertex(q)) {
            out.push_back(where + ": anchor maps unknown context vertex " + q);
            continue;
        }
        if (!target.has_vertex(h)) {
            out.push_back(where + ": anchor image vertex missing in target " + h);
            continue;
        }
        if (context.vertex_type(q) != target.vertex_type(h))
            out.push_back(where + ": anchor not type-preserving at vertex " + q);
        if (!v_images.insert(h).second)
            out.push_back(where + ": anchor not injective at vertex image " + h);
    }
    for (const auto& [q, h] : anchor.edge_entries()) {
        if (!context.has_edge(q)) {
            out.push_back(where + ": anchor maps unknown context edge " + q);
            continue;
        }
        if (!target.has_edge(h)) {
            out.push_back(where + ": anchor image edge missing in target " + h);
            continue;
        }
        const EdgeRec& qe = context.edge(q);
        const EdgeRec& he = target.edge(h);
        if (qe.type != he.type) out.push_back(where + ": anchor not type-preserving at edge " + q);
        const Id* src = anchor.vertex_image(qe.src);
        const Id* tgt = anchor.vertex_image(qe.tgt);
        if (src == nullptr || tgt == nullptr)
            out.push_back(where + ": anchor maps edge " + q + " without its endpoints");
        else if (*src != he.src || *tgt != he.tgt)
            out.push_back(where + ": anchor does not commute at edge " + q);
        if (!e_images.insert(h).second)
            out.push_back(where + ": anchor not injective at edge image " + h);
    }
    if (anchor.vertex_entries().empty())
        out.push_back(where + ": anchor maps no vertex");
}

void validate_condition(const ConditionPtr& c, const TypedGraph& context,
                        const std::string& where, std::vector<std::string>& out) {
    if (!c) {
        out.push_back(where + ": missing condition");
        return;
    }
    switch (c->kind) {
        case Condition::Kind::True:
            break;
        case Condition::Kind::Not:
            validate_condition(c->left, context, where + ".not", out);
            break;
        case Condition::Kind::And:
            validate_condition(c->left, context, where + ".and[0]", out);
            validate_condition(c->right, context, where + ".and[1]", out);
            break;
        case Condition::Kind::Exists: {
            validate_pattern(c->target, where + ".exists.target", out);
            validate_anchor(c->anchor, context, c->target, where + ".exists", out);
            validate_condition(c->child, c->target, where + ".exists", out);
            break;
        }
    }
}

} // namespace

std::vector<std::string> validate_query(const ExtendedQuery& q) {
    std::vector<std::string> out;
    validate_pattern(q.pattern, "pattern", out);
    validate_condition(q.condition ? q.condition : Condition::make_true(), q.pattern, "condition",
                       out);
    return out;
}

unsigned condition_depth(const ConditionPtr& condition) {
    if (!condition) return 0;
    switch (condition->kind) {
        case Condition::Kind::True:
            return 0;
        case Condition::Kind::Not:
            return 1 + condition_depth(condition->left);
        case Condition::Kind::And:
            return std::max(condition_depth(condition->left), condition_depth(condition->right));
        case Condition::Kind::Exists:
            return 1 + condition_depth(condition->child);
    }
    return 0;
}

} // namespace lrete
