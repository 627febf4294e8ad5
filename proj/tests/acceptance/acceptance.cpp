// One PASS/FAIL line per acceptance criterion. Seeds and tolerances are fixed below; the
// exit code is nonzero when any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aplab/instance_io.hpp"
#include "aplab/martingale.hpp"
#include "aplab/property.hpp"
#include "aplab/strategies.hpp"
#include "aplab/threshold.hpp"
#include "doob_fuzz.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

// h_k reference constants and tolerances.
constexpr double kH1Lo = 0.683, kH1Hi = 0.703;
constexpr double kH2 = 1.2197, kH3 = 1.7316, kHkRel = 0.02;
constexpr double kWhpFraction = 0.95;
constexpr double kMatchingFactor = 2.0, kHamiltonFactor = 3.0;
constexpr double kK3RatioLo = 1.6, kK3RatioHi = 2.4;

constexpr unsigned kWorkersA = 1, kWorkersB = 8;

int failures = 0;
bool reproducible = true;
std::vector<std::string> repro_notes;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", seconds);
  std::printf("%s %s: %s (%s)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(), t);
  std::fflush(stdout);
  failures += !pass;
}

template <typename Fn>
void criterion(const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  report(name, pass, detail, dt.count());
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string csv_of(const TrialPool& pool) {
  std::ostringstream os;
  write_trial_csv(os, pool, "acceptance");
  return os.str();
}

// Runs the pool under both worker counts and records whether the CSV bytes agree.
TrialPool pool_twice(const std::string& label, const Property& property, const StrategyHandle& strategy, Vertex n,
                     std::uint64_t trials, std::uint64_t seed, std::uint64_t max_steps) {
  PoolRequest req;
  req.trials = trials;
  req.seed = seed;
  req.max_steps = max_steps;
  req.workers = kWorkersA;
  TrialPool a = run_pool(property, strategy, n, req);
  req.workers = kWorkersB;
  const TrialPool b = run_pool(property, strategy, n, req);
  const bool same = csv_of(a) == csv_of(b);
  reproducible = reproducible && same;
  repro_notes.push_back(label + "@" + std::to_string(n) + (same ? "" : "(DIFF)"));
  return a;
}

std::uint64_t default_horizon(Vertex n) { return std::max<std::uint64_t>(10ULL * n, 100); }

double fraction_within(const TrialPool& pool, double bound) {
  std::size_t ok = 0;
  for (const auto& r : pool.trials) ok += r.stopping_time && static_cast<double>(*r.stopping_time) <= bound;
  return static_cast<double>(ok) / static_cast<double>(pool.trials.size());
}

double median_stopping(const TrialPool& pool) {
  std::vector<double> t;
  for (const auto& r : pool.trials) t.push_back(r.stopping_time ? static_cast<double>(*r.stopping_time) : INFINITY);
  std::sort(t.begin(), t.end());
  const std::size_t m = t.size() / 2;
  return t.size() % 2 ? t[m] : (t[m - 1] + t[m]) / 2;
}

bool hk(std::string& d, std::uint32_t k, double lo, double hi, std::uint64_t seed) {
  const Vertex n = 100000;
  const auto pool = pool_twice("h" + std::to_string(k), min_degree_property(k), min_degree_strategy(k), n, 200, seed,
                               default_horizon(n));
  const MeanEstimate m = estimate_I_n(pool);
  const double ratio = m.mean / n;
  d = "mean T/n = " + fmt("%.5f", ratio) + " (se " + fmt("%.5f", m.standard_error / n) + "), window [" +
      fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], censored " + std::to_string(m.censored);
  return m.censored == 0 && ratio >= lo && ratio <= hi;
}

}  // namespace

int main() {
  criterion("h1 min-degree:1 n=1e5 200 trials", [](std::string& d) { return hk(d, 1, kH1Lo, kH1Hi, 101); });

  criterion("h2/h3 min-degree:2,3 n=1e5 200 trials", [](std::string& d) {
    std::string d2, d3;
    const bool a = hk(d2, 2, kH2 * (1 - kHkRel), kH2 * (1 + kHkRel), 102);
    const bool b = hk(d3, 3, kH3 * (1 - kHkRel), kH3 * (1 + kHkRel), 103);
    d = "k=2: " + d2 + "; k=3: " + d3;
    return a && b;
  });

  criterion("perfect matching n=1e4 100 trials", [](std::string& d) {
    const Vertex n = 10000;
    const auto pool = pool_twice("matching", perfect_matching_property(), matching_strategy(), n, 100, 104,
                                 default_horizon(n));
    const double within = fraction_within(pool, kMatchingFactor * n);
    const MeanEstimate m = estimate_I_n(pool);
    d = "within 2n: " + fmt("%.2f", within) + ", I_n/n = " + fmt("%.4f", m.mean / n);
    return within >= kWhpFraction && m.mean / n >= 0.5;
  });

  criterion("hamiltonian cycle n=1e4 100 trials", [](std::string& d) {
    const Vertex n = 10000;
    const auto pool =
        pool_twice("hamilton", hamiltonian_property(), hamilton_strategy(), n, 100, 105, default_horizon(n));
    const double within = fraction_within(pool, kHamiltonFactor * n);
    d = "within 3n: " + fmt("%.2f", within) + ", median T/n = " + fmt("%.4f", median_stopping(pool) / n);
    return within >= kWhpFraction;
  });

  criterion("K3 median scaling 2500 -> 1e4, 200 trials", [](std::string& d) {
    const MultiGraph k3 = oracle::complete(3);
    const auto small = pool_twice("K3", subgraph_property(k3), degenerate_subgraph_strategy(k3), 2500, 200, 106,
                                  default_horizon(2500));
    const auto large = pool_twice("K3", subgraph_property(k3), degenerate_subgraph_strategy(k3), 10000, 200, 107,
                                  default_horizon(10000));
    const double ms = median_stopping(small), ml = median_stopping(large);
    const double ratio = ml / ms;
    d = "median " + fmt("%.1f", ms) + " -> " + fmt("%.1f", ml) + ", ratio " + fmt("%.3f", ratio);
    return std::isfinite(ratio) && ratio >= kK3RatioLo && ratio <= kK3RatioHi;
  });

  criterion("sharpening min-degree:1 widths at 1e3, 4e3, 1.6e4, 2000 trials", [](std::string& d) {
    std::vector<double> rel;
    std::uint64_t seed = 108;
    for (Vertex n : {1000u, 4000u, 16000u}) {
      const auto pool = pool_twice("sharpening", min_degree_property(1), min_degree_strategy(1), n, 2000, seed++,
                                   default_horizon(n));
      rel.push_back(sharpness_width(pool, 0.1, 0.9).relative);
    }
    d = "relative widths " + fmt("%.5f", rel[0]) + ", " + fmt("%.5f", rel[1]) + ", " + fmt("%.5f", rel[2]);
    return rel[0] > rel[1] && rel[1] > rel[2];
  });

  criterion("exact Doob suite: two-subset + 200 random instances", [](std::string& d) {
    const auto rep = verify_instance(load_instance(std::string(APLAB_DATA_DIR) + "/instances/two_subset.json"));
    const auto j = nlohmann::json::parse(rep.json);
    const bool two = rep.passed && j["mu"] == "1/2" && j["c"] == "1/8" && j["pr_tau_le_N"] == "1/2" &&
                     j["boost"]["boosted_win"] == "1" && j["quantify"]["holds"] == true;
    std::mt19937_64 rng(109);
    int bad = 0, with_potential = 0;
    std::string first_bad;
    for (int i = 0; i < 200; ++i) {
      const auto inst = oracle::random_instance(rng);
      const auto v = oracle::check_instance(inst);
      if (!(v.matches && v.boost_properties && v.identity && v.quantify)) {
        if (bad++ == 0) first_bad = inst.text + v.detail;
      }
      with_potential += oracle::evaluate(inst).pr_tau > 0;
    }
    d = std::string("two-subset ") + (two ? "exact" : "MISMATCH") + ", random violations " + std::to_string(bad) +
        "/200 (" + std::to_string(with_potential) + " with potential)";
    if (bad) d += ", first: " + first_bad;
    return two && bad == 0;
  });

  criterion("exact coupling suite: 500 martingales + k=1 example + tails", [](std::string& d) {
    std::mt19937_64 rng(110);
    std::uniform_int_distribution<std::size_t> depth(1, 5);
    int coupling_bad = 0, tail_bad = 0, azuma_bad = 0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t k = depth(rng);
      const auto m = oracle::random_martingale(rng, k, k <= 3 ? 4 : 3);
      const auto r = couple_balanced(m);
      const auto v = oracle::check_coupling(m, r.coupled);
      coupling_bad += !(v.q1 && v.q2 && v.q3 && v.martingale);
      for (const Rational& t : {Rational(0), Rational(1, 4), Rational(1), Rational(5, 2)}) {
        const auto rep = tail_bound_check(m, t, r);
        const bool exact = rep.lhs == oracle::lower_tail(m, t);
        tail_bad += !(exact && rep.holds && rep.coupled_holds);
      }
      // Balanced version: c_j = the largest sibling spread at level j.
      auto b = m;
      for (std::size_t j = 1; j <= k; ++j) {
        const std::size_t s = b.space.factor(j).size();
        Rational spread = 0;
        for (std::size_t base = 0; base < b.values[j].size(); base += s) {
          const auto [lo, hi] = std::minmax_element(b.values[j].begin() + base, b.values[j].begin() + base + s);
          spread = std::max(spread, Rational(*hi - *lo));
        }
        b.c[j - 1] = spread;
      }
      const auto rb = couple_balanced(b);
      const auto rep = tail_bound_check(b, Rational(1, 2), rb);
      azuma_bad += !(rb.records.empty() && rb.coupled.values == b.values && rep.unstable_mass == 0 &&
                     rep.lhs <= rep.exp_upper);
    }
    const auto k1 = verify_instance(load_instance(std::string(APLAB_DATA_DIR) + "/instances/coupling_k1.json"));
    const auto j = nlohmann::json::parse(k1.json);
    const bool k1_ok = k1.passed && j["coupling"]["records"].size() == 1 &&
                       j["coupling"]["records"][0]["gamma"] == "1/4" &&
                       j["coupling"]["values"][1] == nlohmann::json::array({"1/2", "1/2"});
    d = "coupling violations " + std::to_string(coupling_bad) + "/500, tail violations " + std::to_string(tail_bad) +
        "/2000, balanced-input Azuma violations " + std::to_string(azuma_bad) + "/500, k=1 example " +
        (k1_ok ? "gamma=1/4, M'_1=1/2" : "MISMATCH");
    return coupling_bad == 0 && tail_bad == 0 && azuma_bad == 0 && k1_ok;
  });

  criterion("boost schedule grid", [](std::string& d) {
    int runs = 0, bad = 0;
    for (int i = 1; i <= 9; ++i) {
      const double theta = i / 10.0;
      for (std::uint64_t m : {100ULL, 10000ULL, 1000000ULL}) {
        for (double theta2 : {(1 + theta) / 2, theta + 1e-9}) {
          ++runs;
          bad += !boost_schedule(theta, theta2, m).holds;
        }
      }
    }
    d = std::to_string(runs - bad) + "/" + std::to_string(runs) + " (theta, m*, theta2) cells hold";
    return bad == 0;
  });

  criterion("reproducibility workers 1 vs 8", [](std::string& d) {
    d = std::to_string(repro_notes.size()) + " Monte Carlo pools compared:";
    for (const auto& n : repro_notes) d += " " + n;
    return reproducible && !repro_notes.empty();
  });

  std::printf("summary: %d failing criteria\n", failures);
  return failures ? 1 : 0;
}
