#pragma once

#include <vector>

#include "lrete/match.hpp"

namespace lrete {

/// Changes to the result set of an extended query caused by a graph
/// modification: satisfying matches of the source with no satisfying
/// counterpart in the target, and vice versa.
struct ResultDelta {
    std::vector<Match> removed;  // matches into the source graph
    std::vector<Match> added;    // matches into the target graph
};

} // namespace lrete
