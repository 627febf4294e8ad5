#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "aplab/errors.hpp"
#include "aplab/instance_io.hpp"
#include "aplab/martingale.hpp"
#include "aplab/process.hpp"
#include "aplab/registry.hpp"
#include "aplab/threshold.hpp"

#ifndef APLAB_VERSION
#define APLAB_VERSION "unknown"
#endif

namespace aplab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string property;
  std::string strategy;
  std::vector<std::uint32_t> n;
  std::uint64_t trials = 0;
  std::vector<double> theta;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t max_steps = 0;
  unsigned workers = 0;
  std::uint64_t verify_every = 0;
  std::string instance;
  std::uint64_t trial = 0;
  double theta2 = 0.0;
  std::uint64_t m_star = 0;
};

template <typename T>
T json_get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

// Flags win over the file; the file wins over defaults.
RunConfig resolve(const std::string& sub, const CLI::App& app, const Flags& f) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.workers = default_workers();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot open config file '" + f.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config parse error: " + std::string(e.what()));
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    const auto& keys = config_keys();
    for (const auto& [key, _] : j.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw UsageError("unknown config key '" + key + "'");
    }
    if (j.contains("property")) cfg.property = json_get<std::string>(j, "property");
    if (j.contains("strategy")) cfg.strategy = json_get<std::string>(j, "strategy");
    if (j.contains("n")) {
      cfg.n = j.at("n").is_array() ? json_get<std::vector<std::uint32_t>>(j, "n")
                                   : std::vector<std::uint32_t>{json_get<std::uint32_t>(j, "n")};
    }
    if (j.contains("trials")) cfg.trials = json_get<std::uint64_t>(j, "trials");
    if (j.contains("theta")) {
      cfg.theta = j.at("theta").is_array() ? json_get<std::vector<double>>(j, "theta")
                                           : std::vector<double>{json_get<double>(j, "theta")};
    }
    if (j.contains("seed")) cfg.seed = json_get<std::uint64_t>(j, "seed");
    if (j.contains("out")) cfg.out = json_get<std::string>(j, "out");
    if (j.contains("max_steps")) cfg.max_steps = json_get<std::uint64_t>(j, "max_steps");
    if (j.contains("workers")) cfg.workers = json_get<unsigned>(j, "workers");
    if (j.contains("verify_every")) cfg.verify_every = json_get<std::uint64_t>(j, "verify_every");
    if (j.contains("instance")) cfg.instance = json_get<std::string>(j, "instance");
    if (j.contains("trial")) cfg.trial = json_get<std::uint64_t>(j, "trial");
    if (j.contains("theta2")) cfg.theta2 = json_get<double>(j, "theta2");
    if (j.contains("m_star")) cfg.m_star = json_get<std::uint64_t>(j, "m_star");
  }
  const auto given = [&](const char* name) {
    const CLI::Option* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--property")) cfg.property = f.property;
  if (given("--strategy")) cfg.strategy = f.strategy;
  if (given("--n")) cfg.n = f.n;
  if (given("--trials")) cfg.trials = f.trials;
  if (given("--theta")) cfg.theta = f.theta;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--out")) cfg.out = f.out;
  if (given("--max-steps")) cfg.max_steps = f.max_steps;
  if (given("--workers")) cfg.workers = f.workers;
  if (given("--verify-every")) cfg.verify_every = f.verify_every;
  if (given("--instance")) cfg.instance = f.instance;
  if (given("--trial")) cfg.trial = f.trial;
  if (given("--theta2")) cfg.theta2 = f.theta2;
  if (given("--m-star")) cfg.m_star = f.m_star;
  if (cfg.workers == 0) cfg.workers = 1;
  return cfg;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate_sweep(const RunConfig& cfg) {
  require(!cfg.property.empty(), "--property is required");
  require(!cfg.strategy.empty(), "--strategy is required");
  require(!cfg.n.empty(), "--n needs at least one value");
  require(cfg.trials >= 1, "--trials must be at least 1");
  require(!cfg.out.empty(), "--out is required");
  for (auto n : cfg.n) require(n >= 1, "--n values must be positive");
  require(!cfg.max_steps || *cfg.max_steps >= 1, "--max-steps must be at least 1");
}

fs::path cell_dir(const RunConfig& cfg) {
  return fs::path(cfg.out) / sanitize_id(cfg.property) / sanitize_id(cfg.strategy);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot write '" + path.string() + "'");
  os << content;
  if (!os) throw UsageError("write failed for '" + path.string() + "'");
}

std::string manifest(const RunConfig& cfg, const std::string& hash, std::uint32_t n, std::uint64_t max_steps,
                     const std::vector<std::string>& files) {
  json m;
  m["config"] = json::parse(canonical_config(cfg));
  m["config_hash"] = hash;
  m["version"] = APLAB_VERSION;
  m["n"] = n;
  m["max_steps"] = max_steps;
  m["files"] = files;
  return m.dump(2) + "\n";
}

TrialPool pool_for(const RunConfig& cfg, const Property& property, const StrategyHandle& strategy, std::uint32_t n) {
  PoolRequest req;
  req.trials = cfg.trials;
  req.seed = cfg.seed;
  req.max_steps = cfg.max_steps.value_or(default_max_steps(n));
  req.workers = cfg.workers;
  req.verify_every = cfg.verify_every;
  return run_pool(property, strategy, n, req);
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  validate_sweep(cfg);
  const Property property = make_property(cfg.property);
  const StrategyHandle strategy = make_strategy(cfg.strategy);
  const std::string hash = config_hash(canonical_config(cfg));
  for (auto n : cfg.n) {
    const TrialPool pool = pool_for(cfg, property, strategy, n);
    const fs::path dir = cell_dir(cfg) / std::to_string(n);
    ensure_dir(dir);
    std::ostringstream csv;
    write_trial_csv(csv, pool, hash);
    write_file(dir / "trials.csv", csv.str());
    write_file(dir / "manifest.json", manifest(cfg, hash, n, pool.max_steps, {"trials.csv"}));
    out << "n=" << n << " trials=" << pool.trials.size() << " censored=" << pool.censored() << " -> "
        << (dir / "trials.csv").string() << '\n';
  }
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg, std::ostream& out) {
  validate_sweep(cfg);
  require(!cfg.theta.empty(), "--theta needs at least one value");
  for (double t : cfg.theta) require(t > 0.0 && t < 1.0, "--theta values must lie in (0, 1)");
  const Property property = make_property(cfg.property);
  const StrategyHandle strategy = make_strategy(cfg.strategy);
  const std::string hash = config_hash(canonical_config(cfg));
  std::vector<double> thetas = cfg.theta;
  std::sort(thetas.begin(), thetas.end());

  std::vector<SummaryRow> all_rows;
  std::ostringstream width;
  width << "# config_hash=" << hash << '\n' << "property,strategy,n,theta_lo,theta_hi,width,relative\n";
  std::vector<MeanEstimate> means;
  for (auto n : cfg.n) {
    const TrialPool pool = pool_for(cfg, property, strategy, n);
    std::vector<SummaryRow> rows;
    for (double t : thetas) rows.push_back({property.id, strategy.id, estimate_m_theta(pool, t)});
    const fs::path dir = cell_dir(cfg) / std::to_string(n);
    ensure_dir(dir);
    std::ostringstream trials_csv;
    write_trial_csv(trials_csv, pool, hash);
    write_file(dir / "trials.csv", trials_csv.str());
    std::ostringstream summary;
    write_summary_csv(summary, rows, hash);
    write_file(dir / "summary.csv", summary.str());
    write_file(dir / "manifest.json", manifest(cfg, hash, n, pool.max_steps, {"trials.csv", "summary.csv"}));
    if (thetas.size() >= 2) {
      const Width w = sharpness_width(pool, thetas.front(), thetas.back());
      width << property.id << ',' << strategy.id << ',' << n << ',' << format_double(thetas.front()) << ','
            << format_double(thetas.back()) << ',' << w.width << ',' << format_double(w.relative) << '\n';
    }
    if (pool.trials.size() >= 30 && 10 * pool.censored() <= pool.trials.size()) means.push_back(estimate_I_n(pool));
    for (const auto& r : rows) {
      out << "n=" << n << " theta=" << format_double(r.estimate.theta) << " t_hat=" << r.estimate.t_hat << " ["
          << r.estimate.ci_lo << ", " << r.estimate.ci_hi << "]\n";
    }
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }
  std::ostringstream summary;
  write_summary_csv(summary, all_rows, hash);
  write_file(cell_dir(cfg) / "summary.csv", summary.str());
  if (thetas.size() >= 2) write_file(cell_dir(cfg) / "width.csv", width.str());
  if (!means.empty()) {
    std::ostringstream fit;
    fit << "# config_hash=" << hash << '\n' << "property,strategy,n,mean,standard_error,ratio,ratio_se,used,censored\n";
    for (const auto& m : means) {
      fit << property.id << ',' << strategy.id << ',' << m.n << ',' << format_double(m.mean) << ','
          << format_double(m.standard_error) << ',' << format_double(m.mean / m.n) << ','
          << format_double(m.standard_error / m.n) << ',' << m.used << ',' << m.censored << '\n';
    }
    write_file(cell_dir(cfg) / "means.csv", fit.str());
  }
  return kExitOk;
}

int cmd_verify_martingale(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.instance.empty(), "--instance is required");
  const Instance inst = load_instance(cfg.instance);
  const VerificationReport rep = verify_instance(inst);
  out << rep.json;
  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    write_file(fs::path(cfg.out) / "report.json", rep.json);
  }
  return rep.passed ? kExitOk : kExitCheck;
}

int cmd_schedule(const RunConfig& cfg, std::ostream& out) {
  require(cfg.theta.size() == 1, "--theta needs exactly one value");
  require(cfg.m_star >= 1, "--m-star must be at least 1");
  const ScheduleReport rep = boost_schedule(cfg.theta.front(), cfg.theta2, cfg.m_star);
  json j{{"theta", cfg.theta.front()}, {"theta2", cfg.theta2},     {"m_star", cfg.m_star},
         {"iterations", rep.iterations}, {"terminal", rep.terminal}, {"target", rep.target},
         {"holds", rep.holds}};
  out << j.dump(2) << '\n';
  return rep.holds ? kExitOk : kExitCheck;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.property.empty() && !cfg.strategy.empty(), "--property and --strategy are required");
  require(cfg.n.size() == 1 && cfg.n.front() >= 1, "--n needs exactly one positive value");
  const Property property = make_property(cfg.property);
  const StrategyHandle strategy = make_strategy(cfg.strategy);
  RunOptions opts;
  opts.max_steps = cfg.max_steps.value_or(default_max_steps(cfg.n.front()));
  opts.seed = cfg.seed;
  opts.trial = cfg.trial;
  opts.verify_every = cfg.verify_every;
  const Trace tr = run_process(Distribution::semi_random(cfg.n.front()), strategy, property, opts);
  std::ostringstream text;
  write_trace(text, tr);
  if (cfg.out.empty()) {
    out << text.str();
  } else {
    const fs::path path(cfg.out);
    if (path.has_parent_path()) ensure_dir(path.parent_path());
    write_file(path, text.str());
  }
  if (tr.stopping_time) {
    (cfg.out.empty() ? std::cerr : out) << "stopping_time=" << *tr.stopping_time << '\n';
  } else {
    (cfg.out.empty() ? std::cerr : out) << "not reached within " << opts.max_steps << " steps\n";
  }
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"property", "strategy", "n",        "trials",       "theta",
                                             "seed",     "out",      "max_steps", "workers",      "verify_every",
                                             "instance", "trial",    "theta2",    "m_star"};
  return keys;
}

std::uint64_t default_max_steps(std::uint32_t n) { return std::max<std::uint64_t>(10ULL * n, 100); }

std::string canonical_config(const RunConfig& cfg) {
  json j;
  j["subcommand"] = cfg.subcommand;
  j["property"] = cfg.property;
  j["strategy"] = cfg.strategy;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["theta"] = cfg.theta;
  j["seed"] = cfg.seed;
  j["max_steps"] = cfg.max_steps ? json(*cfg.max_steps) : json("auto");
  j["verify_every"] = cfg.verify_every;
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments on sharp thresholds for online graph processes", "aplab"};
  app.require_subcommand(1);
  Flags f;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config file (flags override it)");
    sub->add_option("--property", f.property, "Property id");
    sub->add_option("--strategy", f.strategy, "Strategy id");
    sub->add_option("--n", f.n, "Vertex counts")->delimiter(',');
    sub->add_option("--seed", f.seed, "Seed base");
    sub->add_option("--out", f.out, "Output directory (file for trace)");
    sub->add_option("--max-steps", f.max_steps, "Horizon per trial (default max(10n, 100))");
    sub->add_option("--workers", f.workers, "Worker threads (default APLAB_WORKERS or hardware)");
    sub->add_option("--verify-every", f.verify_every, "Re-verify certificates every k steps");
  };
  auto* simulate = app.add_subcommand("simulate", "Run trials and write per-trial CSV");
  common(simulate);
  simulate->add_option("--trials", f.trials, "Trials per n");
  auto* threshold = app.add_subcommand("threshold", "Estimate m(theta, n) over an n x theta grid");
  common(threshold);
  threshold->add_option("--trials", f.trials, "Trials per n");
  threshold->add_option("--theta", f.theta, "Target probabilities")->delimiter(',');
  auto* verify = app.add_subcommand("verify-martingale", "Exact checks on a Doob or martingale instance");
  verify->add_option("--config", f.config, "JSON config file");
  verify->add_option("--instance", f.instance, "Instance JSON file");
  verify->add_option("--out", f.out, "Directory for report.json");
  auto* schedule = app.add_subcommand("schedule", "Iterate the boost recursion and check its terminal value");
  schedule->add_option("--config", f.config, "JSON config file");
  schedule->add_option("--theta", f.theta, "Starting probability");
  schedule->add_option("--theta2", f.theta2, "Upper probability");
  schedule->add_option("--m-star", f.m_star, "m* of the instance");
  auto* trace = app.add_subcommand("trace", "Run one trial and write its step trace");
  common(trace);
  trace->add_option("--trial", f.trial, "Trial index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "aplab: " << e.what() << '\n';
    return kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    const RunConfig cfg = resolve(sub->get_name(), *sub, f);
    if (sub == simulate) return cmd_simulate(cfg, out);
    if (sub == threshold) return cmd_threshold(cfg, out);
    if (sub == verify) return cmd_verify_martingale(cfg, out);
    if (sub == schedule) return cmd_schedule(cfg, out);
    return cmd_trace(cfg, out);
  } catch (const UsageError& e) {
    err << "aplab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    err << "aplab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "aplab: " << e.what() << '\n';
    return kExitData;
  } catch (const ContractViolation& e) {
    err << "aplab: contract violation: " << e.what() << '\n';
    return kExitCheck;
  }
}

}  // namespace aplab::cli
