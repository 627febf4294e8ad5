#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aplab/distribution.hpp"
#include "aplab/property.hpp"
#include "aplab/rational.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

/// One finite factor: labelled elements with positive exact probabilities summing to 1.
struct Factor {
  std::vector<std::string> labels;
  std::vector<Rational> probabilities;

  std::size_t size() const noexcept { return probabilities.size(); }
};

/// Independent product S_1 x ... x S_N. A prefix of length j is addressed by the mixed-radix
/// index idx = ((s_1 * |S_2| + s_2) * |S_3| + ...) ; the empty prefix is index 0 at length 0.
class FiniteProductSpace {
 public:
  FiniteProductSpace() = default;
  /// DataError on empty factors, non-positive probabilities or sums other than 1.
  explicit FiniteProductSpace(std::vector<Factor> factors);

  static FiniteProductSpace power(const Factor& factor, std::size_t copies);

  std::size_t factor_count() const noexcept { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  /// Number of prefixes of length j (1 for j = 0).
  std::size_t prefix_count(std::size_t j) const { return counts_.at(j); }
  std::size_t sequence_count() const { return counts_.back(); }

  /// Element indices of the length-j prefix with the given index.
  std::vector<std::size_t> decode(std::size_t length, std::size_t index) const;
  std::size_t encode(const std::vector<std::size_t>& elements) const;

  /// Probability of every prefix of length j, in index order.
  std::vector<Rational> prefix_probabilities(std::size_t length) const;

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> counts_{1};
};

/// Exact Doob martingale f_j of a win indicator over Supp(D)^N.
struct DoobTable {
  FiniteProductSpace space;
  std::size_t N = 0;
  /// f[s] for every full sequence s.
  std::vector<std::uint8_t> win;
  /// levels[j][idx] = f_j(prefix idx), j = 0..N. levels[0][0] is mu.
  std::vector<std::vector<Rational>> levels;

  const Rational& mu() const { return levels.at(0).at(0); }
};

/// Largest number of full sequences exact_doob will enumerate.
inline constexpr std::size_t kDoobLimit = 1'000'000;

/// Replays a deterministic strategy on every sequence of support indices of an explicit
/// distribution and aggregates the win indicator exactly. UsageError for randomized
/// strategies or non-explicit distributions, LimitExceeded past kDoobLimit sequences.
DoobTable exact_doob(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                     std::size_t N);

/// Builds the tower from a given win vector (used by exact_doob and tests).
DoobTable doob_from_wins(FiniteProductSpace space, std::vector<std::uint8_t> win);

/// Best win probability of any adaptive strategy within N steps (expectimax over the
/// game tree). LimitExceeded when more than `state_limit` states would be visited.
Rational optimal_win_probability(const Distribution& dist, const Property& property, std::size_t N,
                                 std::size_t state_limit = 2'000'000);

/// Least N in [1, max_N] whose optimal win probability reaches 1/2, if any.
std::optional<std::uint64_t> brute_force_m_star(const Distribution& dist, const Property& property,
                                                std::size_t max_N, std::size_t state_limit = 2'000'000);

struct BoostParams {
  Rational theta;
  Rational mu;
  std::uint64_t m_star = 0;
  /// 1 + log2(1/(1-theta)), exact when 1/(1-theta) is a power of two, else rounded up to a
  /// multiple of 2^-20.
  Rational C_theta;
  /// c^2 = mu^2 (1-mu)^2 / (2 C_theta m_star).
  Rational c_squared;
  /// c itself when c^2 is the square of a rational.
  std::optional<Rational> c_exact;
};

/// UsageError unless 0 < theta < 1, 0 <= mu <= 1 and m_star >= 1.
BoostParams make_boost_params(const Rational& theta, const Rational& mu, std::uint64_t m_star);

/// C(theta) = 1 + log2(1/(1-theta)), upper-rounded as described in BoostParams.
Rational c_theta(const Rational& theta);

/// sqrt(x) when x is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& x);

struct PotentialReport {
  /// Per full sequence: first step j (1-based) whose prefix has potential.
  std::vector<std::optional<std::size_t>> tau;
  /// Per full sequence: witness index in S_tau.
  std::vector<std::optional<std::size_t>> witness;
  /// Per prefix node: witness when the prefix itself has potential (levels 1..N).
  std::vector<std::vector<std::optional<std::size_t>>> node_witness;
  Rational stable_mass;
  Rational unstable_mass;
};

/// Potential test f_j(r_1..w_j) > f_j(r_1..r_j) + c, compared in squares. The witness is the
/// first admissible element in factor order.
PotentialReport find_potential(const DoobTable& doob, const BoostParams& params);

struct BoostReport {
  Rational base_win;
  Rational boosted_win;
  Rational pr_tau_le_N;
  std::optional<Rational> base_given_stable;
  std::optional<Rational> boosted_given_stable;
  std::optional<Rational> base_given_free;
  std::optional<Rational> boosted_given_free;
  /// mu + c * Pr[tau <= N] when c is rational.
  std::optional<Rational> bound;
  double bound_approx = 0.0;
  bool property1 = false;
  bool property2 = false;
  bool property3 = false;

  bool all() const { return property1 && property2 && property3; }
};

/// Exact win probability of the free-move boost strategy: the prefix up to tau has its last
/// element swapped for the witness and the suffix keeps its original distribution.
BoostReport potential_boost_run(const DoobTable& doob, const BoostParams& params);
BoostReport potential_boost_run(const DoobTable& doob, const BoostParams& params, const PotentialReport& potential);

struct QuantifyReport {
  /// N <= C_theta * m_star and mu > 0; when false the bound is reported, not asserted.
  bool precondition = false;
  std::string precondition_note;
  Rational pr_tau_le_N;
  Rational bound;
  Rational margin;
  bool holds = false;
};

/// Pr[tau <= N] >= (1 - mu) / 2, exactly.
QuantifyReport verify_quantify_boost(const DoobTable& doob, const BoostParams& params);

struct ScheduleReport {
  std::uint64_t iterations = 0;
  double terminal = 0.0;
  double target = 0.0;
  bool holds = false;
};

/// gamma_0 = theta, gamma_{i+1} = gamma_i + gamma_i (1-gamma_i)^3 / (4 sqrt(m_star)), run for
/// ceil(sqrt(m_star)) steps; holds iff terminal >= min(theta2, theta + theta (1-theta)^3 / 32).
ScheduleReport boost_schedule(double theta, double theta2, std::uint64_t m_star);

/// Martingale on S_0 x ... x S_k. values[j] holds m_j over prefixes of length j + 1.
struct DiscreteMartingale {
  FiniteProductSpace space;
  std::vector<std::vector<Rational>> values;
  /// c[j - 1] bounds level j.
  std::vector<Rational> c;

  std::size_t k() const { return space.factor_count() - 1; }
  const Rational& value(std::size_t j, std::size_t prefix) const { return values.at(j).at(prefix); }
};

/// Shape checks only (table sizes, k >= 0, c >= 0); DataError on mismatch.
void validate_shape(const DiscreteMartingale& m);

/// Exact tower property at every prefix.
bool is_martingale(const DiscreteMartingale& m);

/// m_j(.., s') - m_j(.., s) <= c_j for every level, prefix and pair.
bool is_balanced(const DiscreteMartingale& m);

/// Per full sequence: true iff no level admits a substitution gaining more than c_j.
std::vector<bool> stable_sequences(const DiscreteMartingale& m);

struct CouplingRecord {
  std::size_t level = 0;
  /// Index of the parent prefix (length = level).
  std::size_t prefix = 0;
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  Rational gamma;
  Rational gamma_A;
  Rational gamma_B;
};

struct CouplingResult {
  DiscreteMartingale coupled;
  /// One record per node where the small set is non-empty.
  std::vector<CouplingRecord> records;
};

/// Largest product space couple_balanced and tail_bound_check accept.
inline constexpr std::size_t kCouplingLimit = 100'000;

/// Balanced martingale M' with M'_0 = M_0 that lies below M on every stable sequence, built
/// level by level with the minimal shift gamma. DataError when the shift interval is empty.
CouplingResult couple_balanced(const DiscreteMartingale& m);

struct CouplingChecks {
  bool initial = false;     // M'_0 = M_0
  bool balanced = false;    // M' balanced w.r.t. c
  bool dominated = false;   // M'_j <= M_j on every stable sequence
  bool martingale = false;  // M' satisfies the tower property

  bool all() const { return initial && balanced && dominated && martingale; }
};

CouplingChecks check_coupling(const DiscreteMartingale& m, const CouplingResult& result);

struct TailReport {
  Rational t;
  /// Pr[M_k <= M_0 - t].
  Rational lhs;
  Rational unstable_mass;
  /// exp(-2 t^2 / sum c_j^2) in long double, plus 1e-12 as an upward error bound.
  Rational exp_upper;
  double exp_term = 0.0;
  bool holds = false;
  /// Pr[M'_k <= M_0 - t] for the coupled martingale, against the same exponential.
  Rational coupled_lhs;
  bool coupled_holds = false;
};

/// Both sides of the one-sided tail bound for stable sequences, exactly except for the
/// exponential. UsageError when t < 0.
TailReport tail_bound_check(const DiscreteMartingale& m, const Rational& t);
TailReport tail_bound_check(const DiscreteMartingale& m, const Rational& t, const CouplingResult& coupling);

}  // namespace aplab
