#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aplab/distribution.hpp"
#include "aplab/process.hpp"
#include "aplab/property.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Per-trial stopping times for one (property, strategy, n) cell. Every estimator below
/// reads the same pool, so quantiles for different theta are coupled and monotone.
struct TrialPool {
  std::string property_id;
  std::string strategy_id;
  Vertex n = 0;
  std::uint64_t seed_base = 0;
  std::uint64_t max_steps = 0;
  std::vector<TrialRecord> trials;

  std::size_t censored() const;
  /// Fraction of trials with T <= t.
  std::uint64_t successes_by(std::uint64_t t) const;
};

struct PoolRequest {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 0;
  unsigned workers = 1;
  std::uint64_t verify_every = 0;
};

/// Runs trials 0..trials-1 of the semi-random process on [n] (or `dist` when given).
TrialPool run_pool(const Property& property, const StrategyHandle& strategy, Vertex n, const PoolRequest& request,
                   const std::optional<Distribution>& dist = std::nullopt);

struct CurvePoint {
  std::uint64_t t = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  WilsonInterval ci;
};

struct SuccessCurve {
  Vertex n = 0;
  std::string strategy_id;
  std::string property_id;
  std::vector<CurvePoint> grid;
};

/// t_grid must be sorted ascending.
SuccessCurve success_curve(const TrialPool& pool, const std::vector<std::uint64_t>& t_grid);

struct ThresholdEstimate {
  double theta = 0.0;
  Vertex n = 0;
  std::uint64_t t_hat = 0;
  std::uint64_t ci_lo = 0;
  std::uint64_t ci_hi = 0;
  std::uint64_t trials = 0;
  /// True when the Wilson lower bound never reaches theta within max_steps (ci_hi = max_steps).
  bool ci_hi_censored = false;
};

/// Least t >= 1 with p_hat(t) >= theta, by bisection over [1, max_steps]. The band is
/// [least t whose Wilson upper bound reaches theta, least t whose Wilson lower bound does].
/// DataError when p_hat never reaches theta.
ThresholdEstimate estimate_m_theta(const TrialPool& pool, double theta);

struct Width {
  std::uint64_t width = 0;
  double relative = 0.0;
};
Width sharpness_width(const TrialPool& pool, double theta1, double theta2);

struct MeanEstimate {
  Vertex n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t used = 0;
  std::uint64_t censored = 0;
};

/// Mean stopping time over uncensored trials. UsageError below 30 trials, DataError above
/// 10% censoring.
MeanEstimate estimate_I_n(const TrialPool& pool);

struct SubadditivityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double margin = 0.0;
  bool holds = false;
};

/// I_n/n <= max(I_i/i, I_{n-i}/(n-i)) + slack, slack = 3 * combined standard error of the
/// three ratios + n^-0.1. Requires min(i, n - i) >= n^0.8.
SubadditivityReport subadditivity_check(const std::optional<MeanEstimate>& at_i,
                                        const std::optional<MeanEstimate>& at_n_minus_i,
                                        const std::optional<MeanEstimate>& at_n);

struct LinearFit {
  std::vector<Vertex> n;
  std::vector<double> ratio;
  std::vector<double> ratio_se;
  double drift = 0.0;
  double last_difference = 0.0;
  double last_combined_se = 0.0;
  bool non_converged = false;
  double limit_estimate = 0.0;
};

/// Needs >= 3 points with strictly increasing n.
LinearFit linear_fit(const std::vector<MeanEstimate>& points);

/// FNV-1a 64-bit hash of a canonical config string, as 16 lowercase hex digits.
std::string config_hash(std::string_view canonical);

/// Trial CSV: `# config_hash=...` line, then
/// property,strategy,n,seed_base,trial,stopping_time,censored (stopping_time empty when censored).
void write_trial_csv(std::ostream& os, const TrialPool& pool, std::string_view hash);

struct SummaryRow {
  std::string property_id;
  std::string strategy_id;
  ThresholdEstimate estimate;
};

/// Summary CSV: `# config_hash=...` line, a `#` note that estimates are strategy-specific, then property,strategy,n,theta,t_hat,ci_lo,ci_hi,trials.
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows, std::string_view hash);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace aplab
