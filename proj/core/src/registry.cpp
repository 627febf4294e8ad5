#include "aplab/registry.hpp"

#include <charconv>
#include <fstream>

#include "aplab/errors.hpp"
#include "aplab/strategies.hpp"

namespace aplab {

namespace {

std::uint64_t parse_count(std::string_view text, std::string_view what, std::uint64_t min) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < min) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

MultiGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

Property make_property(std::string_view id) {
  if (starts_with(id, "min-degree:")) {
    return min_degree_property(static_cast<std::uint32_t>(parse_count(id.substr(11), "min-degree k", 1)));
  }
  if (id == "perfect-matching") return perfect_matching_property();
  if (id == "hamiltonian") return hamiltonian_property();
  if (id == "approx-matching") return approx_matching_property();
  if (id == "approx-path") return approx_path_property();
  if (id == "always-true") return always_true_property();
  if (starts_with(id, "subgraph:")) {
    return subgraph_property(load_graph_file(std::string(id.substr(9))), std::string(id));
  }
  if (starts_with(id, "contains-edge:")) {
    const auto body = id.substr(14);
    const auto dash = body.find('-');
    if (dash == std::string_view::npos) throw UsageError("contains-edge expects u-v, got '" + std::string(body) + "'");
    const auto u = parse_count(body.substr(0, dash), "vertex", 1);
    const auto v = parse_count(body.substr(dash + 1), "vertex", 1);
    if (u == v) throw UsageError("contains-edge needs two distinct vertices");
    return contains_edge_property(Edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  }
  throw UsageError("unknown property id '" + std::string(id) + "'");
}

StrategyHandle make_strategy(std::string_view id) {
  if (starts_with(id, "min-degree:")) {
    return min_degree_strategy(static_cast<std::uint32_t>(parse_count(id.substr(11), "min-degree k", 1)));
  }
  if (id == "matching") return matching_strategy();
  if (id == "hamilton") return hamilton_strategy();
  if (id == "approx-cleanup:matching") return approx_then_cleanup(CleanupTarget::kMatching);
  if (id == "approx-cleanup:hamilton") return approx_then_cleanup(CleanupTarget::kHamilton);
  if (starts_with(id, "subgraph:")) {
    return degenerate_subgraph_strategy(load_graph_file(std::string(id.substr(9))), std::string(id));
  }
  if (starts_with(id, "boost:")) {
    // The inner id may itself contain ':', so m and k are read from the right.
    const auto body = id.substr(6);
    const auto last = body.rfind(':');
    if (last == std::string_view::npos || last == 0) throw UsageError("boost expects boost:<inner>:<m>:<k>");
    const auto mid = body.rfind(':', last - 1);
    if (mid == std::string_view::npos) throw UsageError("boost expects boost:<inner>:<m>:<k>");
    const auto k = parse_count(body.substr(last + 1), "boost k", 1);
    const auto m = parse_count(body.substr(mid + 1, last - mid - 1), "boost m", 1);
    return multi_round_boost(make_strategy(body.substr(0, mid)), m, k);
  }
  throw UsageError("unknown strategy id '" + std::string(id) + "'");
}

std::string sanitize_id(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return out;
}

}  // namespace aplab
