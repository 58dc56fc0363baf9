#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lrete/match.hpp"
#include "lrete/typed_graph.hpp"

namespace lrete {

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

/// Nested graph condition over a context pattern. Exists nodes carry an
/// anchor morphism from the context pattern (or a subgraph of it) into
/// the target pattern; the child condition's context is the target.
struct Condition {
    enum class Kind { True, Not, And, Exists };

    Kind kind = Kind::True;

    ConditionPtr left;   // Not: negated child; And: first conjunct
    ConditionPtr right;  // And: second conjunct

    TypedGraph target;   // Exists: Q'
    Match anchor;        // Exists: element mapping into target
    ConditionPtr child;  // Exists: condition over target

    static ConditionPtr make_true();
    static ConditionPtr make_not(ConditionPtr child);
    static ConditionPtr make_and(ConditionPtr left, ConditionPtr right);
    static ConditionPtr make_exists(Match anchor, TypedGraph target, ConditionPtr child);
};

struct ExtendedQuery {
    TypedGraph pattern;
    ConditionPtr condition;
};

/// Whether the anchor covers every element of the pattern.
bool anchor_is_total(const Match& anchor, const TypedGraph& pattern);

/// Weak connectivity over the undirected view.
bool is_weakly_connected(const TypedGraph& g);

/// All invariant violations of the query; empty means valid. Each entry
/// names the offending subcondition by its path from the root.
std::vector<std::string> validate_query(const ExtendedQuery& q);

/// Nesting depth: true has depth 0, negation and existential nesting
/// each add a level, conjunction takes the deeper branch.
unsigned condition_depth(const ConditionPtr& condition);

} // namespace lrete
