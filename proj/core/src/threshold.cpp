#include "aplab/threshold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "aplab/errors.hpp"

namespace aplab {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw UsageError("theta must lie in (0, 1), got " + format_double(theta));
}

}  // namespace

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw UsageError("wilson: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::size_t TrialPool::censored() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialRecord& r) { return !r.stopping_time; }));
}

std::uint64_t TrialPool::successes_by(std::uint64_t t) const {
  return static_cast<std::uint64_t>(std::count_if(trials.begin(), trials.end(), [t](const TrialRecord& r) {
    return r.stopping_time && *r.stopping_time <= t;
  }));
}

TrialPool run_pool(const Property& property, const StrategyHandle& strategy, Vertex n, const PoolRequest& request,
                   const std::optional<Distribution>& dist) {
  if (request.trials < 1) throw UsageError("trials must be at least 1");
  if (request.max_steps < 1) throw UsageError("max_steps must be at least 1");
  const Distribution d = dist ? *dist : Distribution::semi_random(n);
  TrialPool pool;
  pool.property_id = property.id;
  pool.strategy_id = strategy.id;
  pool.n = d.vertex_count();
  pool.seed_base = request.seed;
  pool.max_steps = request.max_steps;
  pool.trials = run_trials(request.trials, request.workers, [&](std::uint64_t trial) {
    RunOptions opts;
    opts.max_steps = request.max_steps;
    opts.seed = request.seed;
    opts.trial = trial;
    opts.record_steps = false;
    opts.verify_every = request.verify_every;
    const Trace tr = run_process(d, strategy, property, opts);
    return TrialRecord{trial, tr.stopping_time, tr.markers};
  });
  return pool;
}

SuccessCurve success_curve(const TrialPool& pool, const std::vector<std::uint64_t>& t_grid) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw UsageError("t_grid must be sorted");
  SuccessCurve curve;
  curve.n = pool.n;
  curve.strategy_id = pool.strategy_id;
  curve.property_id = pool.property_id;
  std::vector<std::uint64_t> times;
  for (const auto& r : pool.trials) {
    if (r.stopping_time) times.push_back(*r.stopping_time);
  }
  std::sort(times.begin(), times.end());
  const std::uint64_t total = pool.trials.size();
  for (std::uint64_t t : t_grid) {
    CurvePoint pt;
    pt.t = t;
    pt.trials = total;
    pt.successes = static_cast<std::uint64_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    pt.p_hat = total == 0 ? 0.0 : static_cast<double>(pt.successes) / static_cast<double>(total);
    pt.ci = wilson(pt.successes, total);
    curve.grid.push_back(pt);
  }
  return curve;
}

ThresholdEstimate estimate_m_theta(const TrialPool& pool, double theta) {
  check_theta(theta);
  const std::uint64_t total = pool.trials.size();
  if (total == 0) throw UsageError("estimate_m_theta: empty trial pool");
  std::vector<std::uint64_t> times;
  for (const auto& r : pool.trials) {
    if (r.stopping_time) times.push_back(*r.stopping_time);
  }
  std::sort(times.begin(), times.end());
  const auto count_by = [&](std::uint64_t t) {
    return static_cast<std::uint64_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
  };
  // Least t in [1, hi] with pred(t); pred is monotone in t.
  const auto least = [&](auto pred) -> std::optional<std::uint64_t> {
    std::uint64_t lo = 1;
    std::uint64_t hi = std::max<std::uint64_t>(pool.max_steps, 1);
    if (!pred(hi)) return std::nullopt;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (pred(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  };
  const auto reaches = [&](std::uint64_t t) {
    return static_cast<double>(count_by(t)) >= theta * static_cast<double>(total);
  };
  const auto t_hat = least(reaches);
  if (!t_hat) {
    throw DataError("success curve never reaches theta = " + format_double(theta) + " within " +
                    std::to_string(pool.max_steps) + " steps");
  }
  ThresholdEstimate est;
  est.theta = theta;
  est.n = pool.n;
  est.t_hat = *t_hat;
  est.trials = total;
  est.ci_lo = least([&](std::uint64_t t) { return wilson(count_by(t), total).hi >= theta; }).value_or(*t_hat);
  const auto hi = least([&](std::uint64_t t) { return wilson(count_by(t), total).lo >= theta; });
  est.ci_hi = hi.value_or(pool.max_steps);
  est.ci_hi_censored = !hi.has_value();
  return est;
}

Width sharpness_width(const TrialPool& pool, double theta1, double theta2) {
  if (theta1 > theta2) throw UsageError("sharpness_width needs theta1 <= theta2");
  const auto a = estimate_m_theta(pool, theta1);
  const auto b = estimate_m_theta(pool, theta2);
  Width w;
  w.width = b.t_hat - a.t_hat;
  w.relative = static_cast<double>(w.width) / static_cast<double>(pool.n);
  return w;
}

MeanEstimate estimate_I_n(const TrialPool& pool) {
  if (pool.trials.size() < 30) throw UsageError("estimate_I_n needs at least 30 trials");
  MeanEstimate est;
  est.n = pool.n;
  est.censored = pool.censored();
  if (10 * est.censored > pool.trials.size()) {
    throw DataError(std::to_string(est.censored) + " of " + std::to_string(pool.trials.size()) +
                    " trials censored (more than 10%)");
  }
  double sum = 0.0;
  for (const auto& r : pool.trials) {
    if (r.stopping_time) sum += static_cast<double>(*r.stopping_time);
  }
  est.used = pool.trials.size() - est.censored;
  est.mean = sum / static_cast<double>(est.used);
  double ss = 0.0;
  for (const auto& r : pool.trials) {
    if (r.stopping_time) ss += std::pow(static_cast<double>(*r.stopping_time) - est.mean, 2);
  }
  const double var = est.used > 1 ? ss / static_cast<double>(est.used - 1) : 0.0;
  est.standard_error = std::sqrt(var / static_cast<double>(est.used));
  return est;
}

SubadditivityReport subadditivity_check(const std::optional<MeanEstimate>& at_i,
                                        const std::optional<MeanEstimate>& at_n_minus_i,
                                        const std::optional<MeanEstimate>& at_n) {
  if (!at_i || !at_n_minus_i || !at_n) throw UsageError("subadditivity_check: missing estimate");
  const double n = at_n->n;
  if (at_i->n + at_n_minus_i->n != at_n->n) throw UsageError("subadditivity_check: sizes must satisfy i + (n-i) = n");
  const double floor_size = std::pow(n, 0.8);
  if (at_i->n < floor_size || at_n_minus_i->n < floor_size) {
    throw UsageError("subadditivity_check: split sizes must be at least n^0.8");
  }
  const auto ratio = [](const MeanEstimate& e) { return e.mean / e.n; };
  const auto ratio_se = [](const MeanEstimate& e) { return e.standard_error / e.n; };
  SubadditivityReport r;
  r.lhs = ratio(*at_n);
  r.rhs = std::max(ratio(*at_i), ratio(*at_n_minus_i));
  r.slack = 3.0 * std::sqrt(std::pow(ratio_se(*at_i), 2) + std::pow(ratio_se(*at_n_minus_i), 2) +
                            std::pow(ratio_se(*at_n), 2)) +
            std::pow(n, -0.1);
  r.margin = r.rhs + r.slack - r.lhs;
  r.holds = r.margin >= 0.0;
  return r;
}

LinearFit linear_fit(const std::vector<MeanEstimate>& points) {
  if (points.size() < 3) throw UsageError("linear_fit needs at least 3 sizes");
  LinearFit fit;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].n <= points[i - 1].n) throw UsageError("linear_fit: n must be strictly increasing");
    fit.n.push_back(points[i].n);
    fit.ratio.push_back(points[i].mean / points[i].n);
    fit.ratio_se.push_back(points[i].standard_error / points[i].n);
  }
  for (std::size_t i = 1; i < fit.ratio.size(); ++i) {
    fit.drift = std::max(fit.drift, std::abs(fit.ratio[i] - fit.ratio[i - 1]));
  }
  const std::size_t last = fit.ratio.size() - 1;
  fit.last_difference = std::abs(fit.ratio[last] - fit.ratio[last - 1]);
  fit.last_combined_se = std::sqrt(std::pow(fit.ratio_se[last], 2) + std::pow(fit.ratio_se[last - 1], 2));
  fit.non_converged = fit.last_difference > 3.0 * fit.last_combined_se;
  fit.limit_estimate = fit.ratio[last];
  return fit;
}

std::string config_hash(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_trial_csv(std::ostream& os, const TrialPool& pool, std::string_view hash) {
  os << "# config_hash=" << hash << '\n';
  os << "property,strategy,n,seed_base,trial,stopping_time,censored\n";
  const std::string prop = csv_field(pool.property_id);
  const std::string strat = csv_field(pool.strategy_id);
  for (const auto& r : pool.trials) {
    os << prop << ',' << strat << ',' << pool.n << ',' << pool.seed_base << ',' << r.trial << ',';
    if (r.stopping_time) os << *r.stopping_time;
    os << ',' << (r.stopping_time ? 0 : 1) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows, std::string_view hash) {
  os << "# config_hash=" << hash << '\n';
  os << "# t_hat is the threshold of the named strategy, an upper bound on the strategy-optimal one\n";
  os << "property,strategy,n,theta,t_hat,ci_lo,ci_hi,trials\n";
  for (const auto& row : rows) {
    const auto& e = row.estimate;
    os << csv_field(row.property_id) << ',' << csv_field(row.strategy_id) << ',' << e.n << ','
       << format_double(e.theta) << ',' << e.t_hat << ',' << e.ci_lo << ',' << e.ci_hi << ',' << e.trials << '\n';
  }
}

}  // namespace aplab
