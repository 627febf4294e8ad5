#include "aplab/process.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "aplab/errors.hpp"

namespace aplab {

RandomSource::RandomSource(const Distribution& dist, std::uint64_t seed, std::uint64_t trial)
    : dist_(&dist), rng_(seed, Stream::kEnvironment, trial) {}

Sample RandomSource::next(std::uint64_t step) {
  StepRandom r(rng_, step);
  return dist_->sample(r);
}

ScriptedSource::ScriptedSource(const Distribution& dist, std::vector<std::size_t> script)
    : dist_(&dist), script_(std::move(script)) {}

Sample ScriptedSource::next(std::uint64_t step) {
  if (step == 0 || step > script_.size()) throw UsageError("scripted source exhausted at step " + std::to_string(step));
  return dist_->support_sample(script_[step - 1]);
}

Trace run_with(const Distribution& dist, Strategy& strategy, const Property& property, SampleSource& source,
               const RunOptions& opts, bool allow_free_move) {
  if (opts.max_steps < 1) throw UsageError("max_steps must be at least 1");
  const Vertex n = dist.vertex_count();
  Trace tr;
  tr.n = n;
  tr.seed = opts.seed;
  tr.trial = opts.trial;
  MultiGraph g = opts.initial ? *opts.initial : MultiGraph(n);
  if (g.vertex_count() != n) throw UsageError("initial graph has the wrong vertex count");

  auto monitor = property.make_monitor();
  const CounterRng strategy_rng(opts.seed, Stream::kStrategy, opts.trial);
  if (monitor->update(g, std::nullopt, strategy.certificate())) {
    tr.stopping_time = 0;
  } else {
    bool free_used = false;
    for (std::uint64_t t = 1; t <= opts.max_steps; ++t) {
      Sample x = source.next(t);
      if (allow_free_move) {
        if (auto w = strategy.free_move(g, x)) {
          if (free_used) throw ContractViolation("strategy requested a second free move at step " + std::to_string(t));
          if (!dist.in_support(*w)) throw ContractViolation("free-move subset is not in the support of the distribution");
          free_used = true;
          tr.free_move_step = t;
          tr.free_move_subset = *w;
          x = std::move(*w);
        }
      }
      StepRandom r(strategy_rng, t);
      const Edge e = strategy.choose(g, x, r);
      if (!x.contains(e)) {
        std::ostringstream msg;
        msg << "strategy chose " << e << " outside the presented sample at step " << t;
        throw ContractViolation(msg.str());
      }
      g.add_edge(e);
      tr.steps_taken = t;
      if (opts.record_steps) tr.steps.push_back({std::move(x), e});
      const Certificate cert = strategy.certificate();
      if (opts.verify_every != 0 && t % opts.verify_every == 0 && !verify_certificate(cert, g)) {
        throw ContractViolation("certificate check failed at step " + std::to_string(t));
      }
      if (monitor->update(g, e, cert)) {
        tr.stopping_time = t;
        break;
      }
      if (strategy.exhausted()) {
        tr.gave_up = true;
        break;
      }
    }
  }
  tr.markers = strategy.markers();
  tr.final_graph = std::move(g);
  return tr;
}

Trace run_process(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                  const RunOptions& opts) {
  auto s = strategy.make(dist);
  RandomSource source(dist, opts.seed, opts.trial);
  return run_with(dist, *s, property, source, opts, false);
}

Trace run_free_move(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                    const RunOptions& opts) {
  auto s = strategy.make(dist);
  RandomSource source(dist, opts.seed, opts.trial);
  return run_with(dist, *s, property, source, opts, true);
}

namespace {

class ConvertedStrategy final : public Strategy {
 public:
  ConvertedStrategy(const Distribution& dist, const StrategyHandle& inner, const Property& property)
      : dist_(&dist),
        inner_(inner.make(dist)),
        property_(property),
        monitor_(property.make_monitor()),
        virtual_(dist.vertex_count()) {}

  Edge choose(const MultiGraph& g, const Sample& x, StepRandom& rng) override {
    ++step_;
    if (replacement_) {
      ++replacement_steps_;
      return replacement_->choose(g, x, rng);
    }
    if (!started_) {
      virtual_ = g;
      monitor_->update(virtual_, std::nullopt, inner_->certificate());
      started_ = true;
    }
    Edge real_edge;
    Edge virtual_edge;
    std::optional<Sample> w;
    if (!free_step_) w = inner_->free_move(virtual_, x);
    if (w) {
      if (!dist_->in_support(*w)) throw ContractViolation("free-move subset is not in the support of the distribution");
      free_step_ = step_;
      virtual_edge = inner_->choose(virtual_, *w, rng);
      if (!w->contains(virtual_edge)) throw ContractViolation("inner strategy chose an edge outside its free-move subset");
      real_edge = x.first_edge();
      if (virtual_edge != real_edge) missing_ = virtual_edge;
    } else {
      virtual_edge = inner_->choose(virtual_, x, rng);
      real_edge = virtual_edge;
    }
    virtual_.add_edge(virtual_edge);
    const bool satisfied = monitor_->update(virtual_, virtual_edge, inner_->certificate());
    if (satisfied && missing_) {
      MultiGraph real = g;
      real.add_edge(real_edge);
      replacement_ = property_.replacement->start(real, *missing_, inner_->certificate());
      budget_ = property_.replacement->budget(dist_->vertex_count());
      switch_step_ = step_;
    }
    return real_edge;
  }

  Certificate certificate() const override {
    if (replacement_) return replacement_->certificate();
    // After a diverging free move the inner certificate may use the missing edge.
    if (missing_) return {};
    return inner_->certificate();
  }

  bool exhausted() const override { return replacement_ && replacement_steps_ >= budget_; }

  std::vector<std::pair<std::string, std::uint64_t>> markers() const override {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    if (free_step_) out.emplace_back("free_move", *free_step_);
    if (switch_step_) out.emplace_back("replacement_start", *switch_step_);
    return out;
  }

 private:
  const Distribution* dist_;
  std::unique_ptr<Strategy> inner_;
  Property property_;
  std::unique_ptr<Monitor> monitor_;
  MultiGraph virtual_;
  bool started_ = false;
  std::uint64_t step_ = 0;
  std::optional<std::uint64_t> free_step_;
  std::optional<Edge> missing_;
  std::unique_ptr<Strategy> replacement_;
  std::uint64_t budget_ = 0;
  std::uint64_t replacement_steps_ = 0;
  std::optional<std::uint64_t> switch_step_;
};

}  // namespace

StrategyHandle convert_free_to_standard(const StrategyHandle& free_strategy, const Property& property) {
  if (!property.replacement) throw UsageError("property " + property.id + " has no edge-replacement procedure");
  StrategyHandle h;
  h.id = "converted:" + free_strategy.id;
  h.deterministic = free_strategy.deterministic;
  h.create = [inner = free_strategy, property](const Distribution& d) -> std::unique_ptr<Strategy> {
    return std::make_unique<ConvertedStrategy>(d, inner, property);
  };
  return h;
}

void write_trace(std::ostream& os, const Trace& trace) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    os << (i + 1) << ' ' << (s.sample.is_star() ? s.sample.center() : 0) << ' ' << s.chosen.u << ' ' << s.chosen.v
       << '\n';
  }
}

std::vector<TrialRecord> run_trials(std::uint64_t count, unsigned workers,
                                    const std::function<TrialRecord(std::uint64_t)>& run_one) {
  std::vector<TrialRecord> out(count);
  if (count == 0) return out;
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, count)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = run_one(i);
        out[i].trial = i;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("APLAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace aplab
