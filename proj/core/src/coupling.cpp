#include <algorithm>
#include <cmath>

#include "aplab/errors.hpp"
#include "aplab/martingale.hpp"

namespace aplab {

namespace {

// Calls fn(level, parent, first_child, size) for every sibling group at levels 1..k.
template <typename Fn>
void for_each_group(const DiscreteMartingale& m, Fn&& fn) {
  for (std::size_t j = 1; j <= m.k(); ++j) {
    const std::size_t s = m.space.factor(j).size();
    for (std::size_t parent = 0; parent < m.space.prefix_count(j); ++parent) fn(j, parent, parent * s, s);
  }
}

void require_small(const DiscreteMartingale& m, const char* what) {
  if (m.space.sequence_count() > kCouplingLimit) {
    throw LimitExceeded(std::string(what) + ": product space has " + std::to_string(m.space.sequence_count()) +
                        " sequences, limit " + std::to_string(kCouplingLimit));
  }
}

}  // namespace

void validate_shape(const DiscreteMartingale& m) {
  if (m.space.factor_count() < 1) throw DataError("martingale needs at least the factor S_0");
  if (m.values.size() != m.k() + 1) throw DataError("martingale needs one value table per level 0..k");
  for (std::size_t j = 0; j <= m.k(); ++j) {
    if (m.values[j].size() != m.space.prefix_count(j + 1)) {
      throw DataError("level " + std::to_string(j) + " has " + std::to_string(m.values[j].size()) +
                      " values, expected " + std::to_string(m.space.prefix_count(j + 1)));
    }
  }
  if (m.c.size() != m.k()) throw DataError("martingale needs one bound c_j per level 1..k");
  for (const auto& c : m.c) {
    if (sgn(c) < 0) throw DataError("bounds c_j must be non-negative");
  }
}

bool is_martingale(const DiscreteMartingale& m) {
  validate_shape(m);
  bool ok = true;
  for_each_group(m, [&](std::size_t j, std::size_t parent, std::size_t first, std::size_t s) {
    if (!ok) return;
    const Factor& f = m.space.factor(j);
    Rational avg = 0;
    for (std::size_t i = 0; i < s; ++i) avg += f.probabilities[i] * m.values[j][first + i];
    ok = avg == m.values[j - 1][parent];
  });
  return ok;
}

bool is_balanced(const DiscreteMartingale& m) {
  validate_shape(m);
  bool ok = true;
  for_each_group(m, [&](std::size_t j, std::size_t, std::size_t first, std::size_t s) {
    if (!ok) return;
    const auto [lo, hi] = std::minmax_element(m.values[j].begin() + static_cast<std::ptrdiff_t>(first),
                                              m.values[j].begin() + static_cast<std::ptrdiff_t>(first + s));
    ok = *hi - *lo <= m.c[j - 1];
  });
  return ok;
}

std::vector<bool> stable_sequences(const DiscreteMartingale& m) {
  validate_shape(m);
  std::vector<bool> stable(m.space.prefix_count(1), true);
  for (std::size_t j = 1; j <= m.k(); ++j) {
    const std::size_t s = m.space.factor(j).size();
    const auto& v = m.values[j];
    std::vector<bool> next(v.size());
    for (std::size_t parent = 0; parent < stable.size(); ++parent) {
      const std::size_t first = parent * s;
      const Rational hi = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(first),
                                            v.begin() + static_cast<std::ptrdiff_t>(first + s));
      for (std::size_t i = 0; i < s; ++i) next[first + i] = stable[parent] && hi - v[first + i] <= m.c[j - 1];
    }
    stable = std::move(next);
  }
  return stable;
}

CouplingResult couple_balanced(const DiscreteMartingale& m) {
  validate_shape(m);
  require_small(m, "couple_balanced");
  CouplingResult out;
  out.coupled = m;
  auto& mv = out.coupled.values;

  // Below a node the working martingale Y is either M shifted down by `shift`, or constant.
  struct Mode {
    bool constant = false;
    Rational shift;
  };
  std::vector<Mode> mode(m.space.prefix_count(1), Mode{false, Rational(0)});
  for (std::size_t j = 1; j <= m.k(); ++j) {
    const Factor& f = m.space.factor(j);
    const std::size_t s = f.size();
    const Rational& c = m.c[j - 1];
    std::vector<Mode> next(m.space.prefix_count(j + 1));
    for (std::size_t parent = 0; parent < mode.size(); ++parent) {
      const std::size_t first = parent * s;
      const Mode& pm = mode[parent];
      std::vector<Rational> y(s);
      for (std::size_t i = 0; i < s; ++i) {
        y[i] = pm.constant ? mv[j - 1][parent] : m.values[j][first + i] - pm.shift;
      }
      const Rational hi = *std::max_element(y.begin(), y.end());
      CouplingRecord rec;
      rec.level = j;
      rec.prefix = parent;
      for (std::size_t i = 0; i < s; ++i) (y[i] < hi - c ? rec.small : rec.large).push_back(i);
      if (rec.small.empty()) {
        for (std::size_t i = 0; i < s; ++i) {
          mv[j][first + i] = y[i];
          next[first + i] = pm;
        }
        continue;
      }
      Rational pA = 0;
      Rational mass_A = 0;
      for (auto i : rec.small) {
        pA += f.probabilities[i];
        mass_A += f.probabilities[i] * y[i];
      }
      const Rational pB = 1 - pA;
      const Rational EA = mass_A / pA;
      Rational minB = y[rec.large.front()];
      Rational maxB = minB;
      for (auto i : rec.large) {
        minB = std::min(minB, y[i]);
        maxB = std::max(maxB, y[i]);
      }
      // Smallest gamma >= 0 with EA + gamma/pA in [minB - gamma/pB, maxB - gamma/pB].
      const Rational scale = 1 / pA + 1 / pB;
      rec.gamma = EA < minB ? Rational((minB - EA) / scale) : Rational(0);
      rec.gamma_A = rec.gamma / pA;
      rec.gamma_B = rec.gamma / pB;
      const Rational a_value = EA + rec.gamma_A;
      if (a_value > maxB - rec.gamma_B) {
        throw DataError("empty shift interval at level " + std::to_string(j) + ", prefix " + std::to_string(parent) +
                        " (input is not a martingale)");
      }
      for (auto i : rec.small) {
        mv[j][first + i] = a_value;
        next[first + i] = Mode{true, Rational(0)};
      }
      for (auto i : rec.large) {
        mv[j][first + i] = y[i] - rec.gamma_B;
        next[first + i] = Mode{false, pm.shift + rec.gamma_B};
      }
      out.records.push_back(std::move(rec));
    }
    mode = std::move(next);
  }
  return out;
}

CouplingChecks check_coupling(const DiscreteMartingale& m, const CouplingResult& result) {
  const auto& mp = result.coupled;
  CouplingChecks out;
  out.initial = mp.values.at(0) == m.values.at(0);
  out.balanced = is_balanced(mp);
  out.martingale = is_martingale(mp);
  const auto stable = stable_sequences(m);
  out.dominated = true;
  const std::size_t k = m.k();
  for (std::size_t seq = 0; seq < stable.size() && out.dominated; ++seq) {
    if (!stable[seq]) continue;
    std::size_t idx = seq;
    for (std::size_t j = k + 1; j-- > 1;) {
      if (mp.values[j][idx] > m.values[j][idx]) {
        out.dominated = false;
        break;
      }
      idx /= m.space.factor(j).size();
    }
  }
  return out;
}

TailReport tail_bound_check(const DiscreteMartingale& m, const Rational& t) {
  return tail_bound_check(m, t, couple_balanced(m));
}

TailReport tail_bound_check(const DiscreteMartingale& m, const Rational& t, const CouplingResult& coupling) {
  validate_shape(m);
  require_small(m, "tail_bound_check");
  if (sgn(t) < 0) throw UsageError("tail_bound_check needs t >= 0");
  TailReport rep;
  rep.t = t;
  const std::size_t k = m.k();
  const auto probs = m.space.prefix_probabilities(k + 1);
  const auto stable = stable_sequences(m);
  const std::size_t per_root = m.space.sequence_count() / m.space.prefix_count(1);
  rep.lhs = 0;
  rep.unstable_mass = 0;
  rep.coupled_lhs = 0;
  for (std::size_t seq = 0; seq < probs.size(); ++seq) {
    const Rational floor_value = m.values[0][seq / per_root] - t;
    if (m.values[k][seq] <= floor_value) rep.lhs += probs[seq];
    if (coupling.coupled.values[k][seq] <= floor_value) rep.coupled_lhs += probs[seq];
    if (!stable[seq]) rep.unstable_mass += probs[seq];
  }
  Rational sum_c2 = 0;
  for (const auto& c : m.c) sum_c2 += c * c;
  long double e = 1.0L;
  if (sgn(t) > 0) {
    e = sgn(sum_c2) == 0 ? 0.0L : std::exp(-2.0L * static_cast<long double>(Rational(t * t / sum_c2).get_d()));
  }
  rep.exp_term = static_cast<double>(e);
  rep.exp_upper = Rational(rep.exp_term) + Rational(1, 1'000'000) / 1'000'000;
  rep.holds = rep.lhs <= rep.exp_upper + rep.unstable_mass;
  rep.coupled_holds = rep.coupled_lhs <= rep.exp_upper;
  return rep;
}

}  // namespace aplab
