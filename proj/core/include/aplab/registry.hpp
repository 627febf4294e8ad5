#pragma once

#include <string>
#include <string_view>

#include "aplab/graph.hpp"
#include "aplab/property.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

/// Property ids: min-degree:k, perfect-matching, hamiltonian, approx-matching, approx-path,
/// subgraph:<edge-list-file>, contains-edge:u-v, always-true. UsageError on anything else.
Property make_property(std::string_view id);

/// Strategy ids: min-degree:k, matching, hamilton, subgraph:<edge-list-file>,
/// boost:<inner>:<m>:<k>, approx-cleanup:<matching|hamilton>.
StrategyHandle make_strategy(std::string_view id);

/// Reads an edge-list pattern file (DataError when unreadable or malformed).
MultiGraph load_graph_file(const std::string& path);

/// Path-safe form of an id: '/', '\\' and ':' become '_'.
std::string sanitize_id(std::string_view id);

}  // namespace aplab
