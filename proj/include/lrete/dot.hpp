#pragma once

#include <string>

#include "lrete/localize.hpp"

namespace lrete {

/// Graphviz dump of a standard net: node kind, query subgraph, height.
std::string dot_dump(const ReteNet& net);

/// Graphviz dump of a marking-sensitive net; with a configuration, each
/// node also lists its tuples and markings (debug mode).
std::string dot_dump(const MsNet& net, const MsConfiguration* config = nullptr);

} // namespace lrete
