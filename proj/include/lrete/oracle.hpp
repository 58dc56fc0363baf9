#pragma once

#include <string>
#include <vector>

#include "lrete/modification.hpp"
#include "lrete/query.hpp"
#include "lrete/result_delta.hpp"

namespace lrete::oracle {

/// Brute-force reference semantics. Everything here is exponential by
/// design and shares no matching code with the RETE engines; it is the
/// ground truth the engines are tested against.

/// All total type-preserving homomorphisms from q into host, by
/// exhaustive backtracking. With `injective`, element images must be
/// pairwise distinct.
std::vector<Match> enumerate_matches(const TypedGraph& q, const TypedGraph& host,
                                     bool injective = false);

/// Nested graph condition satisfaction for a total match of the context
/// pattern.
bool eval_condition(const Match& m, const TypedGraph& context, const ConditionPtr& condition,
                    const TypedGraph& host);

/// Subgraph satisfaction dependence: whether changes confined to the
/// relevant subgraph could affect the condition's satisfaction for m
/// (overapproximation; true is never dependent).
bool is_satisfaction_dependent(const Match& m, const TypedGraph& context,
                               const ConditionPtr& condition, const TypedGraph& host,
                               const RelevantSubgraph& relevant);

struct OracleReport {
    std::vector<std::pair<std::string, Match>> violations;

    bool ok() const { return violations.empty(); }
};

/// Plain completeness under the relevant subgraph: every match touching
/// it must be in the result set. Also reports result elements that are
/// not valid matches.
OracleReport check_completeness(const std::vector<Match>& result, const TypedGraph& q,
                                const TypedGraph& host, const RelevantSubgraph& relevant);

/// Extended correctness under the relevant subgraph: no violating match
/// in the result, every satisfying match touching the subgraph present.
OracleReport check_correctness(const std::vector<Match>& result, const ExtendedQuery& q,
                               const TypedGraph& host, const RelevantSubgraph& relevant);

/// Recompute-and-diff reference for result change detection.
ResultDelta recompute_delta(const ExtendedQuery& q, const GraphModification& mod);

} // namespace lrete::oracle
