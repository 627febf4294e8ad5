#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aplab/distribution.hpp"
#include "aplab/martingale.hpp"
#include "aplab/rational.hpp"

namespace aplab {

/// Explicit-distribution instance for the Doob / potential checks.
struct DoobInstance {
  Distribution dist = Distribution::semi_random(2);
  std::string property_id;
  std::string strategy_id;
  std::size_t N = 0;
  Rational theta;
  /// Brute-forced by expectimax when absent.
  std::optional<std::uint64_t> m_star;
};

/// Martingale instance for the coupling and tail checks.
struct MartingaleInstance {
  DiscreteMartingale martingale;
  std::vector<Rational> t_values;
};

using Instance = std::variant<DoobInstance, MartingaleInstance>;

/// JSON instance with rationals as "p/q" strings:
///   {"kind": "doob", "n": 3, "support": [{"edges": [[1, 2]], "p": "1/2"}, ...],
///    "property": "...", "strategy": "...", "N": 1, "theta": "1/2", "m_star": 1}
///   {"kind": "martingale", "factors": [[{"label": "a", "p": "1/2"}, ...], ...],
///    "values": [["1/2"], ["0", "1"]], "c": ["2/5"], "t": ["1/2"]}
/// DataError with the offending key on malformed input.
Instance read_instance(std::istream& is);
Instance load_instance(const std::string& path);

struct VerificationReport {
  bool passed = false;
  /// Pretty-printed JSON; every rational is kept exact as a "p/q" string.
  std::string json;
};

/// Runs every exact check that applies to the instance.
VerificationReport verify_instance(const Instance& instance);

}  // namespace aplab
