#include "aplab/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "aplab/errors.hpp"
#include "aplab/process.hpp"

namespace aplab {

FiniteProductSpace::FiniteProductSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    Factor& f = factors_[i];
    const std::string where = "factor " + std::to_string(i);
    if (f.probabilities.empty()) throw DataError(where + " is empty");
    if (f.labels.empty()) {
      for (std::size_t s = 0; s < f.size(); ++s) f.labels.push_back(std::to_string(s));
    }
    if (f.labels.size() != f.size()) throw DataError(where + ": label count differs from probability count");
    Rational sum = 0;
    for (const auto& p : f.probabilities) {
      if (sgn(p) <= 0) throw DataError(where + ": probabilities must be positive");
      sum += p;
    }
    if (sum != 1) throw DataError(where + ": probabilities sum to " + to_string(sum) + ", not 1");
    const std::size_t prev = counts_.back();
    if (prev > kDoobLimit * 16 / f.size()) throw LimitExceeded("product space too large");
    counts_.push_back(prev * f.size());
  }
}

FiniteProductSpace FiniteProductSpace::power(const Factor& factor, std::size_t copies) {
  return FiniteProductSpace(std::vector<Factor>(copies, factor));
}

std::vector<std::size_t> FiniteProductSpace::decode(std::size_t length, std::size_t index) const {
  std::vector<std::size_t> out(length);
  for (std::size_t j = length; j-- > 0;) {
    out[j] = index % factors_[j].size();
    index /= factors_[j].size();
  }
  return out;
}

std::size_t FiniteProductSpace::encode(const std::vector<std::size_t>& elements) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < elements.size(); ++j) idx = idx * factors_.at(j).size() + elements[j];
  return idx;
}

std::vector<Rational> FiniteProductSpace::prefix_probabilities(std::size_t length) const {
  std::vector<Rational> probs{Rational(1)};
  for (std::size_t j = 0; j < length; ++j) {
    const Factor& f = factors_.at(j);
    std::vector<Rational> next;
    next.reserve(probs.size() * f.size());
    for (const auto& p : probs) {
      for (const auto& q : f.probabilities) next.push_back(p * q);
    }
    probs = std::move(next);
  }
  return probs;
}

DoobTable doob_from_wins(FiniteProductSpace space, std::vector<std::uint8_t> win) {
  if (win.size() != space.sequence_count()) throw UsageError("win vector size does not match the space");
  DoobTable t;
  t.N = space.factor_count();
  t.levels.resize(t.N + 1);
  t.levels[t.N].reserve(win.size());
  for (auto w : win) t.levels[t.N].emplace_back(w ? 1 : 0);
  for (std::size_t j = t.N; j-- > 0;) {
    const Factor& f = space.factor(j);
    auto& parent = t.levels[j];
    const auto& child = t.levels[j + 1];
    parent.assign(space.prefix_count(j), Rational(0));
    for (std::size_t idx = 0; idx < parent.size(); ++idx) {
      for (std::size_t s = 0; s < f.size(); ++s) parent[idx] += f.probabilities[s] * child[idx * f.size() + s];
    }
  }
  t.space = std::move(space);
  t.win = std::move(win);
  return t;
}

DoobTable exact_doob(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                     std::size_t N) {
  if (dist.kind() != Distribution::Kind::kExplicit) throw UsageError("exact_doob needs an explicit distribution");
  if (!strategy.deterministic) throw UsageError("exact_doob needs a deterministic strategy, got '" + strategy.id + "'");
  if (N < 1) throw UsageError("exact_doob needs N >= 1");
  Factor factor;
  for (std::size_t i = 0; i < dist.support().size(); ++i) {
    factor.labels.push_back("X" + std::to_string(i));
    factor.probabilities.push_back(dist.support()[i].probability);
  }
  double total = std::pow(static_cast<double>(factor.size()), static_cast<double>(N));
  if (total > static_cast<double>(kDoobLimit)) {
    throw LimitExceeded("|Supp|^N = " + std::to_string(static_cast<std::uint64_t>(total)) + " exceeds " +
                        std::to_string(kDoobLimit));
  }
  FiniteProductSpace space = FiniteProductSpace::power(factor, N);
  std::vector<std::uint8_t> win(space.sequence_count());
  RunOptions opts;
  opts.max_steps = N;
  opts.record_steps = false;
  for (std::size_t seq = 0; seq < win.size(); ++seq) {
    ScriptedSource source(dist, space.decode(N, seq));
    auto s = strategy.make(dist);
    const Trace tr = run_with(dist, *s, property, source, opts, false);
    win[seq] = tr.stopping_time.has_value() ? 1 : 0;
  }
  return doob_from_wins(std::move(space), std::move(win));
}

namespace {

class Expectimax {
 public:
  Expectimax(const Distribution& dist, const Property& property, std::size_t limit)
      : dist_(dist), property_(property), limit_(limit) {}

  Rational value(const std::vector<Edge>& edges, std::size_t steps) {
    auto key = std::make_pair(edges, steps);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limit_) throw LimitExceeded("expectimax state limit reached");
    MultiGraph g(dist_.vertex_count());
    for (const Edge& e : edges) g.add_edge(e);
    Rational v = 0;
    if (property_.check(g)) {
      v = 1;
    } else if (steps > 0) {
      for (const auto& subset : dist_.support()) {
        Rational best = 0;
        for (const Edge& e : subset.edges) {
          auto next = edges;
          next.insert(std::upper_bound(next.begin(), next.end(), e), e);
          best = std::max(best, value(next, steps - 1));
          if (best == 1) break;
        }
        v += subset.probability * best;
      }
    }
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  const Distribution& dist_;
  const Property& property_;
  std::size_t limit_;
  std::map<std::pair<std::vector<Edge>, std::size_t>, Rational> memo_;
};

}  // namespace

Rational optimal_win_probability(const Distribution& dist, const Property& property, std::size_t N,
                                 std::size_t state_limit) {
  if (dist.kind() != Distribution::Kind::kExplicit) throw UsageError("expectimax needs an explicit distribution");
  Expectimax ex(dist, property, state_limit);
  return ex.value({}, N);
}

std::optional<std::uint64_t> brute_force_m_star(const Distribution& dist, const Property& property,
                                                std::size_t max_N, std::size_t state_limit) {
  if (dist.kind() != Distribution::Kind::kExplicit) throw UsageError("expectimax needs an explicit distribution");
  Expectimax ex(dist, property, state_limit);
  for (std::size_t N = 1; N <= max_N; ++N) {
    if (ex.value({}, N) >= Rational(1, 2)) return N;
  }
  return std::nullopt;
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class& p = x.get_num();
  const mpz_class& q = x.get_den();
  if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t())) return std::nullopt;
  Rational r(sqrt(p), sqrt(q));
  r.canonicalize();
  return r;
}

Rational c_theta(const Rational& theta) {
  if (!(theta > 0 && theta < 1)) throw UsageError("theta must lie in (0, 1), got " + to_string(theta));
  Rational q = 1 / (1 - theta);
  q.canonicalize();
  if (q.get_den() == 1 && mpz_popcount(q.get_num().get_mpz_t()) == 1) {
    const auto e = mpz_sizeinbase(q.get_num().get_mpz_t(), 2) - 1;
    return Rational(static_cast<unsigned long>(1 + e));
  }
  // Not a power of two: round log2 up to a multiple of 2^-20, one extra unit covering the
  // long double error.
  constexpr long double kScale = 1 << 20;
  const long double l = std::log2(static_cast<long double>(q.get_d()));
  const auto units = static_cast<long>(std::ceil(l * kScale)) + 1;
  Rational r(units, 1L << 20);
  r.canonicalize();
  return 1 + r;
}

BoostParams make_boost_params(const Rational& theta, const Rational& mu, std::uint64_t m_star) {
  if (mu < 0 || mu > 1) throw UsageError("mu must lie in [0, 1], got " + to_string(mu));
  if (m_star < 1) throw UsageError("m_star must be at least 1");
  BoostParams p;
  p.theta = theta;
  p.mu = mu;
  p.m_star = m_star;
  p.C_theta = c_theta(theta);
  const Rational v = mu * (1 - mu);
  p.c_squared = v * v / (2 * p.C_theta * Rational(static_cast<unsigned long>(m_star)));
  p.c_squared.canonicalize();
  p.c_exact = exact_sqrt(p.c_squared);
  return p;
}

PotentialReport find_potential(const DoobTable& doob, const BoostParams& params) {
  const auto& space = doob.space;
  const std::size_t N = doob.N;
  PotentialReport rep;
  rep.node_witness.resize(N + 1);
  // first[idx] = (tau, witness) of the earliest potential prefix on the path to idx.
  std::vector<std::pair<std::size_t, std::size_t>> first(1, {0, 0});
  for (std::size_t j = 1; j <= N; ++j) {
    const std::size_t s = space.factor(j - 1).size();
    const auto& f = doob.levels[j];
    auto& wit = rep.node_witness[j];
    wit.assign(f.size(), std::nullopt);
    std::vector<std::pair<std::size_t, std::size_t>> next(f.size());
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
      const std::size_t base = (idx / s) * s;
      for (std::size_t w = 0; w < s; ++w) {
        if (exceeds_sqrt(f[base + w] - f[idx], params.c_squared)) {
          wit[idx] = w;
          break;
        }
      }
      const auto& up = first[idx / s];
      if (up.first != 0) {
        next[idx] = up;
      } else if (wit[idx]) {
        next[idx] = {j, *wit[idx]};
      } else {
        next[idx] = {0, 0};
      }
    }
    first = std::move(next);
  }
  const auto probs = space.prefix_probabilities(N);
  rep.tau.resize(first.size());
  rep.witness.resize(first.size());
  rep.stable_mass = 0;
  rep.unstable_mass = 0;
  for (std::size_t seq = 0; seq < first.size(); ++seq) {
    if (first[seq].first == 0) {
      rep.stable_mass += probs[seq];
    } else {
      rep.tau[seq] = first[seq].first;
      rep.witness[seq] = first[seq].second;
      rep.unstable_mass += probs[seq];
    }
  }
  return rep;
}

BoostReport potential_boost_run(const DoobTable& doob, const BoostParams& params) {
  return potential_boost_run(doob, params, find_potential(doob, params));
}

BoostReport potential_boost_run(const DoobTable& doob, const BoostParams& params, const PotentialReport& pot) {
  const auto& space = doob.space;
  const std::size_t N = doob.N;
  BoostReport rep;
  rep.base_win = doob.mu();
  rep.pr_tau_le_N = pot.unstable_mass;

  // Walk the prefix tree; a node enters R when it has potential and its parent is clean.
  Rational free_base = 0;
  Rational free_boosted = 0;
  std::vector<std::uint8_t> clean(1, 1);
  std::vector<Rational> prob(1, Rational(1));
  for (std::size_t j = 1; j <= N; ++j) {
    const Factor& fac = space.factor(j - 1);
    const std::size_t s = fac.size();
    const auto& f = doob.levels[j];
    std::vector<std::uint8_t> next_clean(f.size(), 0);
    std::vector<Rational> next_prob(f.size());
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
      const std::size_t parent = idx / s;
      next_prob[idx] = prob[parent] * fac.probabilities[idx % s];
      if (!clean[parent]) continue;
      if (const auto& w = pot.node_witness[j][idx]) {
        free_base += next_prob[idx] * f[idx];
        free_boosted += next_prob[idx] * f[parent * s + *w];
      } else {
        next_clean[idx] = 1;
      }
    }
    clean = std::move(next_clean);
    prob = std::move(next_prob);
  }
  Rational stable_win = 0;
  for (std::size_t seq = 0; seq < clean.size(); ++seq) {
    if (clean[seq] && doob.win[seq]) stable_win += prob[seq];
  }
  rep.boosted_win = stable_win + free_boosted;

  const Rational& stable_mass = pot.stable_mass;
  if (sgn(stable_mass) > 0) {
    rep.base_given_stable = stable_win / stable_mass;
    rep.boosted_given_stable = stable_win / stable_mass;
    rep.property1 = *rep.base_given_stable == *rep.boosted_given_stable;
  } else {
    rep.property1 = true;
  }
  if (sgn(rep.pr_tau_le_N) > 0) {
    rep.base_given_free = free_base / rep.pr_tau_le_N;
    rep.boosted_given_free = free_boosted / rep.pr_tau_le_N;
    rep.property2 = exceeds_sqrt(*rep.boosted_given_free - *rep.base_given_free, params.c_squared);
  } else {
    rep.property2 = true;
  }
  const Rational gain = rep.boosted_win - rep.base_win;
  rep.property3 = at_least_sqrt(gain, params.c_squared * rep.pr_tau_le_N * rep.pr_tau_le_N);
  if (params.c_exact) rep.bound = rep.base_win + *params.c_exact * rep.pr_tau_le_N;
  rep.bound_approx = rep.base_win.get_d() + std::sqrt(params.c_squared.get_d()) * rep.pr_tau_le_N.get_d();
  return rep;
}

QuantifyReport verify_quantify_boost(const DoobTable& doob, const BoostParams& params) {
  QuantifyReport rep;
  const Rational limit = params.C_theta * Rational(static_cast<unsigned long>(params.m_star));
  const bool horizon_ok = Rational(static_cast<unsigned long>(doob.N)) <= limit;
  const bool mu_ok = sgn(doob.mu()) > 0;
  rep.precondition = horizon_ok && mu_ok;
  if (!horizon_ok) rep.precondition_note = "N = " + std::to_string(doob.N) + " exceeds C_theta * m_star = " + to_string(limit);
  if (!mu_ok) rep.precondition_note += std::string(rep.precondition_note.empty() ? "" : "; ") + "mu = 0";
  if (params.mu != doob.mu()) {
    throw UsageError("params.mu = " + to_string(params.mu) + " differs from f_0 = " + to_string(doob.mu()));
  }
  rep.pr_tau_le_N = find_potential(doob, params).unstable_mass;
  rep.bound = (1 - doob.mu()) / 2;
  rep.margin = rep.pr_tau_le_N - rep.bound;
  rep.holds = sgn(rep.margin) >= 0;
  return rep;
}

ScheduleReport boost_schedule(double theta, double theta2, std::uint64_t m_star) {
  if (!(theta > 0.0 && theta < theta2 && theta2 < 1.0)) throw UsageError("boost_schedule needs 0 < theta < theta2 < 1");
  if (m_star < 1) throw UsageError("m_star must be at least 1");
  const long double root = std::sqrt(static_cast<long double>(m_star));
  ScheduleReport rep;
  rep.iterations = static_cast<std::uint64_t>(std::ceil(root));
  long double g = theta;
  for (std::uint64_t i = 0; i < rep.iterations; ++i) {
    const long double d = 1.0L - g;
    g += g * d * d * d / (4.0L * root);
  }
  const long double t = theta;
  const long double target = std::min<long double>(theta2, t + t * (1 - t) * (1 - t) * (1 - t) / 32.0L);
  rep.terminal = static_cast<double>(g);
  rep.target = static_cast<double>(target);
  rep.holds = g >= target;
  return rep;
}

}  // namespace aplab
