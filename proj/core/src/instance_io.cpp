#include "aplab/instance_io.hpp"

#include <fstream>
#include <json.hpp>

#include "aplab/errors.hpp"
#include "aplab/registry.hpp"

namespace aplab {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw DataError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw DataError(where + ": unknown key '" + key + "'");
  }
}

Rational rational_at(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw DataError(where + ": expected a rational string \"p/q\"");
}

std::uint64_t count_at(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw DataError(where + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string text_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw DataError(where + ": expected a string");
  return v.get<std::string>();
}

const json& array_at(const json& v, const std::string& where) {
  if (!v.is_array()) throw DataError(where + ": expected an array");
  return v;
}

DoobInstance parse_doob(const json& j) {
  reject_unknown(j, {"kind", "n", "support", "property", "strategy", "N", "theta", "m_star"}, "instance");
  DoobInstance inst;
  const auto n = count_at(field(j, "n", "instance"), "n");
  std::vector<WeightedSubset> support;
  const auto& sup = array_at(field(j, "support", "instance"), "support");
  for (std::size_t i = 0; i < sup.size(); ++i) {
    const std::string where = "support[" + std::to_string(i) + "]";
    reject_unknown(sup[i], {"edges", "p"}, where);
    WeightedSubset ws;
    for (const auto& e : array_at(field(sup[i], "edges", where), where + ".edges")) {
      if (!e.is_array() || e.size() != 2) throw DataError(where + ".edges: each edge is [u, v]");
      const auto u = count_at(e[0], where + ".edges");
      const auto v = count_at(e[1], where + ".edges");
      if (u < 1 || v < 1 || u > n || v > n || u == v) throw DataError(where + ".edges: bad edge");
      ws.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    ws.probability = rational_at(field(sup[i], "p", where), where + ".p");
    support.push_back(std::move(ws));
  }
  try {
    inst.dist = Distribution::explicit_subsets(static_cast<Vertex>(n), std::move(support));
  } catch (const UsageError& e) {
    throw DataError(std::string("support: ") + e.what());
  }
  inst.property_id = text_at(field(j, "property", "instance"), "property");
  inst.strategy_id = text_at(field(j, "strategy", "instance"), "strategy");
  inst.N = count_at(field(j, "N", "instance"), "N");
  inst.theta = rational_at(field(j, "theta", "instance"), "theta");
  if (!(inst.theta > 0 && inst.theta < 1)) throw DataError("theta must lie in (0, 1)");
  if (inst.N < 1) throw DataError("N must be at least 1");
  if (j.contains("m_star")) inst.m_star = count_at(j.at("m_star"), "m_star");
  return inst;
}

MartingaleInstance parse_martingale(const json& j) {
  reject_unknown(j, {"kind", "factors", "values", "c", "t"}, "instance");
  std::vector<Factor> factors;
  const auto& fs = array_at(field(j, "factors", "instance"), "factors");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string where = "factors[" + std::to_string(i) + "]";
    Factor f;
    for (const auto& el : array_at(fs[i], where)) {
      reject_unknown(el, {"label", "p"}, where);
      f.labels.push_back(el.contains("label") ? text_at(el.at("label"), where + ".label")
                                              : std::to_string(f.labels.size()));
      f.probabilities.push_back(rational_at(field(el, "p", where), where + ".p"));
    }
    factors.push_back(std::move(f));
  }
  MartingaleInstance inst;
  inst.martingale.space = FiniteProductSpace(std::move(factors));
  const auto& vs = array_at(field(j, "values", "instance"), "values");
  for (std::size_t lvl = 0; lvl < vs.size(); ++lvl) {
    const std::string where = "values[" + std::to_string(lvl) + "]";
    std::vector<Rational> row;
    for (const auto& v : array_at(vs[lvl], where)) row.push_back(rational_at(v, where));
    inst.martingale.values.push_back(std::move(row));
  }
  for (const auto& c : array_at(field(j, "c", "instance"), "c")) inst.martingale.c.push_back(rational_at(c, "c"));
  if (j.contains("t")) {
    for (const auto& t : array_at(j.at("t"), "t")) {
      inst.t_values.push_back(rational_at(t, "t"));
      if (sgn(inst.t_values.back()) < 0) throw DataError("t values must be non-negative");
    }
  }
  validate_shape(inst.martingale);
  return inst;
}

json opt_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

VerificationReport verify_doob(const DoobInstance& inst) {
  json out;
  out["kind"] = "doob";
  const Property property = make_property(inst.property_id);
  const StrategyHandle strategy = make_strategy(inst.strategy_id);
  const DoobTable doob = exact_doob(inst.dist, strategy, property, inst.N);

  bool tower = true;
  for (std::size_t j = 0; j < doob.N && tower; ++j) {
    const Factor& f = doob.space.factor(j);
    for (std::size_t idx = 0; idx < doob.levels[j].size() && tower; ++idx) {
      Rational avg = 0;
      for (std::size_t s = 0; s < f.size(); ++s) avg += f.probabilities[s] * doob.levels[j + 1][idx * f.size() + s];
      tower = avg == doob.levels[j][idx];
    }
  }

  std::uint64_t m_star = 0;
  if (inst.m_star) {
    m_star = *inst.m_star;
    out["m_star_source"] = "supplied";
  } else {
    const auto found = brute_force_m_star(inst.dist, property, 64);
    if (!found) throw DataError("property not reachable with probability 1/2 within 64 steps; supply m_star");
    m_star = *found;
    out["m_star_source"] = "expectimax";
  }
  const BoostParams params = make_boost_params(inst.theta, doob.mu(), m_star);
  const PotentialReport pot = find_potential(doob, params);
  const BoostReport boost = potential_boost_run(doob, params, pot);
  const QuantifyReport quant = verify_quantify_boost(doob, params);

  // Stable means no prefix admits a witness; compare against tau sequence by sequence.
  bool identity = true;
  Rational not_stable = 0;
  const auto probs = doob.space.prefix_probabilities(doob.N);
  for (std::size_t seq = 0; seq < probs.size(); ++seq) {
    const auto r = doob.space.decode(doob.N, seq);
    bool stable = true;
    std::size_t idx = 0;
    for (std::size_t j = 1; j <= doob.N && stable; ++j) {
      const std::size_t s = doob.space.factor(j - 1).size();
      const std::size_t here = idx * s + r[j - 1];
      for (std::size_t w = 0; w < s && stable; ++w) {
        stable = !exceeds_sqrt(doob.levels[j][idx * s + w] - doob.levels[j][here], params.c_squared);
      }
      idx = here;
    }
    if (!stable) not_stable += probs[seq];
    identity = identity && stable == !pot.tau[seq].has_value();
  }
  identity = identity && not_stable == pot.unstable_mass;

  out["property"] = inst.property_id;
  out["strategy"] = inst.strategy_id;
  out["N"] = doob.N;
  out["sequences"] = doob.space.sequence_count();
  out["mu"] = to_string(doob.mu());
  out["m_star"] = m_star;
  out["theta"] = to_string(params.theta);
  out["C_theta"] = to_string(params.C_theta);
  out["c_squared"] = to_string(params.c_squared);
  out["c"] = opt_rational(params.c_exact);
  out["tower"] = tower;
  out["pr_tau_le_N"] = to_string(pot.unstable_mass);
  out["stable_mass"] = to_string(pot.stable_mass);
  out["stable_iff_no_free_move"] = identity;
  out["boost"] = {
      {"base_win", to_string(boost.base_win)},
      {"boosted_win", to_string(boost.boosted_win)},
      {"bound", opt_rational(boost.bound)},
      {"bound_approx", boost.bound_approx},
      {"base_given_stable", opt_rational(boost.base_given_stable)},
      {"boosted_given_stable", opt_rational(boost.boosted_given_stable)},
      {"base_given_free", opt_rational(boost.base_given_free)},
      {"boosted_given_free", opt_rational(boost.boosted_given_free)},
      {"property1", boost.property1},
      {"property2", boost.property2},
      {"property3", boost.property3},
  };
  out["quantify"] = {
      {"precondition", quant.precondition}, {"precondition_note", quant.precondition_note},
      {"pr_tau_le_N", to_string(quant.pr_tau_le_N)}, {"bound", to_string(quant.bound)},
      {"margin", to_string(quant.margin)}, {"holds", quant.holds},
  };
  const bool passed = tower && identity && boost.all() && (!quant.precondition || quant.holds);
  out["passed"] = passed;
  return {passed, out.dump(2) + "\n"};
}

json labels_of(const Factor& f, const std::vector<std::size_t>& idx) {
  json arr = json::array();
  for (auto i : idx) arr.push_back(f.labels[i]);
  return arr;
}

json values_json(const DiscreteMartingale& m) {
  json arr = json::array();
  for (const auto& row : m.values) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    arr.push_back(std::move(r));
  }
  return arr;
}

VerificationReport verify_martingale_instance(const MartingaleInstance& inst) {
  const DiscreteMartingale& m = inst.martingale;
  json out;
  out["kind"] = "martingale";
  out["k"] = m.k();
  out["sequences"] = m.space.sequence_count();
  const bool mart = is_martingale(m);
  out["is_martingale"] = mart;
  out["balanced"] = is_balanced(m);
  if (!mart) {
    out["passed"] = false;
    return {false, out.dump(2) + "\n"};
  }
  const CouplingResult coupling = couple_balanced(m);
  const CouplingChecks checks = check_coupling(m, coupling);
  json records = json::array();
  for (const auto& r : coupling.records) {
    const Factor& f = m.space.factor(r.level);
    records.push_back({{"level", r.level},
                       {"prefix", r.prefix},
                       {"A", labels_of(f, r.small)},
                       {"B", labels_of(f, r.large)},
                       {"gamma", to_string(r.gamma)},
                       {"gamma_A", to_string(r.gamma_A)},
                       {"gamma_B", to_string(r.gamma_B)}});
  }
  out["coupling"] = {{"records", records},
                     {"values", values_json(coupling.coupled)},
                     {"Q1_initial", checks.initial},
                     {"Q2_balanced", checks.balanced},
                     {"Q3_dominated", checks.dominated},
                     {"martingale", checks.martingale}};
  bool tails = true;
  json tail = json::array();
  for (const auto& t : inst.t_values) {
    const TailReport rep = tail_bound_check(m, t, coupling);
    tails = tails && rep.holds && rep.coupled_holds;
    tail.push_back({{"t", to_string(rep.t)},
                    {"lhs", to_string(rep.lhs)},
                    {"unstable_mass", to_string(rep.unstable_mass)},
                    {"exp_term", rep.exp_term},
                    {"holds", rep.holds},
                    {"coupled_lhs", to_string(rep.coupled_lhs)},
                    {"coupled_holds", rep.coupled_holds}});
  }
  out["tail"] = tail;
  const bool passed = checks.all() && tails;
  out["passed"] = passed;
  return {passed, out.dump(2) + "\n"};
}

}  // namespace

Instance read_instance(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("instance parse error: ") + e.what());
  }
  if (!j.is_object()) throw DataError("instance must be a JSON object");
  const std::string kind = text_at(field(j, "kind", "instance"), "kind");
  if (kind == "doob") return parse_doob(j);
  if (kind == "martingale") return parse_martingale(j);
  throw DataError("unknown instance kind '" + kind + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open instance file '" + path + "'");
  try {
    return read_instance(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

VerificationReport verify_instance(const Instance& instance) {
  if (const auto* d = std::get_if<DoobInstance>(&instance)) return verify_doob(*d);
  return verify_martingale_instance(std::get<MartingaleInstance>(instance));
}

}  // namespace aplab
