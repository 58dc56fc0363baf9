#pragma once

#include "lrete/localize.hpp"
#include "lrete/result_delta.hpp"

namespace lrete {

/// Net computing subgraph-satisfaction-dependent matches: the matches
/// whose condition satisfaction could be affected by changes confined to
/// the relevant subgraph (an overapproximation).
struct SatSubnet {
    MsNode* production = nullptr;
    std::vector<MsNode*> order;
    int height = 0;
};

struct SatNet {
    std::shared_ptr<MsNet> arena;
    SatSubnet root;

    MsNode* production() const { return root.production; }
    const std::vector<MsNode*>& order() const { return root.order; }
};

SatNet localize_sat(const ExtendedQuery& q);

/// Stripped production of the sat net over the given host; a superset of
/// the subgraph-satisfaction-dependent matches.
std::vector<Match> compute_sat_dependent(const ExtendedQuery& q, const TypedGraph& host,
                                         const RelevantSubgraph& relevant);

/// One side of the change-detection construction: the localized pattern
/// net filtered to relevant-touching matches, unioned with own-side and
/// translated other-side satisfaction-dependent matches, then checked
/// against a localized net for the full extended query.
struct DeltaParts {
    PlainSubnet base;
    MsNode* filter = nullptr;
    SatSubnet sat;
    MsNode* translate = nullptr;
    MsNode* combined = nullptr;
    PsiSubnet psi;
    MsNode* production = nullptr;
    std::vector<MsNode*> order;
};

/// Two-sided harness for localized result change detection under a
/// subgraph-restricted modification. Owns four nets (delta and sat per
/// side) over the source and target snapshots plus the final translation
/// and anti-join nodes that diff the two productions.
class DiffHarness {
public:
    DiffHarness(ExtendedQuery q, GraphModification mod, RelevantSubgraph relevant_src,
                RelevantSubgraph relevant_tgt);

    /// Executes all four nets to consistency and diffs the productions.
    ResultDelta compute();

    const GraphModification& modification() const { return mod_; }
    const DeltaParts& source_side() const { return delta_src_; }
    const DeltaParts& target_side() const { return delta_tgt_; }
    const MsConfiguration& config() const { return config_; }

private:
    ExtendedQuery query_;
    GraphModification mod_;
    RelevantSubgraph relevant_src_;
    RelevantSubgraph relevant_tgt_;

    std::shared_ptr<MsNet> arena_;
    SatSubnet sat_src_;
    SatSubnet sat_tgt_;
    DeltaParts delta_src_;
    DeltaParts delta_tgt_;
    MsNode* removed_translate_ = nullptr;
    MsNode* removed_anti_ = nullptr;
    MsNode* added_translate_ = nullptr;
    MsNode* added_anti_ = nullptr;
    MsConfiguration config_;
};

/// End-to-end localized change detection. Requires the modification to
/// be subgraph-restricted for the given relevant subgraphs; the result
/// equals the recompute-and-diff of global satisfying-match sets.
ResultDelta compute_result_delta(const ExtendedQuery& q, const GraphModification& mod,
                                 const RelevantSubgraph& relevant_src,
                                 const RelevantSubgraph& relevant_tgt);

} // namespace lrete
