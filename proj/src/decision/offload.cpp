#include "fresco/decision/offload.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "fresco/units.hpp"

namespace fresco::decision {

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Fresco: return "fresco";
    case EngineKind::Minlp: return "minlp";
    case EngineKind::Sq: return "sq";
  }
  throw std::invalid_argument("unknown engine kind");
}

EngineKind engine_from_string(const std::string& text) {
  if (text == "fresco") return EngineKind::Fresco;
  if (text == "minlp") return EngineKind::Minlp;
  if (text == "sq") return EngineKind::Sq;
  throw std::invalid_argument("unknown engine: " + text);
}

namespace {

using Clock = std::chrono::steady_clock;

// Accumulates wall time over the decision segments only, never around the
// execution callback.
class DecisionTimer {
 public:
  explicit DecisionTimer(bool enabled) : enabled_(enabled) {}

  void start() {
    if (enabled_) t0_ = Clock::now();
  }
  void stop() {
    if (enabled_) {
      total_ += std::chrono::duration<double, std::milli>(Clock::now() - t0_).count();
    }
  }
  double total_ms() const { return total_; }

 private:
  bool enabled_;
  Clock::time_point t0_{};
  double total_ = 0.0;
};

std::vector<Candidate>::iterator find_candidate(std::vector<Candidate>& pool,
                                                int node_id) {
  return std::find_if(
      pool.begin(), pool.end(),
      [node_id](const Candidate& c) { return c.node_id == node_id; });
}

} // namespace

OffloadResult fresco_offload(const workload::AppDag& app, EngineKind engine,
                             const EngineParams& params, ConstraintSet base,
                             int local_node_id,
                             std::vector<Candidate> candidates,
                             const OffloadHooks& hooks) {
  app.validate();
  params.weights.validate();
  if (params.top_k < 1) throw std::domain_error("top_k must be >= 1");
  if (!hooks.predict || !hooks.execute || !hooks.battery_remaining_j ||
      !hooks.read_reputations) {
    throw std::invalid_argument("all offload hooks must be set");
  }

  OffloadResult result;
  std::set<int> completed;

  while (completed.size() < app.tasks.size()) {
    const auto ready = workload::ready_tasks(app, completed);
    if (ready.empty()) {
      throw std::runtime_error("no runnable task despite unfinished ones");
    }
    const int t = *ready.begin(); // sequential device: lowest-index ready task
    const workload::TaskSpec& task = app.tasks[t];

    TaskDecision dec;
    dec.task_index = t;

    if (!task.offloadable) {
      const auto outcome = hooks.execute(t, local_node_id);
      if (!outcome.success) {
        throw std::runtime_error("device-bound task reported a failure");
      }
      dec.forced_local = true;
      dec.chosen_node = local_node_id;
      dec.measured_rt_ms = outcome.elapsed_ms;
      dec.attempts = 1;
      result.app_elapsed_ms += outcome.elapsed_ms;
      result.decisions.push_back(dec);
      completed.insert(t);
      continue;
    }

    if (candidates.empty()) {
      result.decisions.push_back(dec); // nothing to place on: skipped
      completed.insert(t);
      continue;
    }

    DecisionTimer timer(params.measure_decision_time);
    timer.start();
    hooks.predict(t, candidates);
    RepMap reps;
    if (engine != EngineKind::Minlp) reps = hooks.read_reputations(candidates);

    for (const auto& c : candidates) {
      if (c.predicted) ++dec.considered;
    }

    // Scores are fixed for the whole task; retries after failures reuse them.
    std::optional<Optima> optima;
    ScoreMap scores;
    if (engine != EngineKind::Sq) {
      optima = local_optima(candidates);
      if (optima) scores = score_all(candidates, *optima, params.weights);
    }
    timer.stop();

    bool resolved = false;
    while (!resolved && !candidates.empty()) {
      timer.start();
      std::optional<int> choice;
      if (engine == EngineKind::Sq) {
        choice = sq_select(candidates, reps, params.top_k);
      } else {
        base.app_elapsed_ms = result.app_elapsed_ms;
        base.battery_remaining_j = hooks.battery_remaining_j();
        base.task_ready = true;
        if (engine == EngineKind::Fresco) {
          base.rep_threshold_raw = reputation_threshold(reps, params.top_k);
          choice = smt_select(scores, candidates, reps, base, task).node_id;
        } else {
          choice = minlp_select(scores, candidates, base, task).node_id;
        }
      }
      timer.stop();
      if (!choice) break; // unsatisfiable with the current pool

      ++dec.attempts;
      const auto outcome = hooks.execute(t, *choice);
      result.app_elapsed_ms += outcome.elapsed_ms;
      if (outcome.success) {
        result.transactions.push_back({outcome.elapsed_ms, *choice, false});
        dec.chosen_node = *choice;
        dec.measured_rt_ms = outcome.elapsed_ms;
        const auto it = find_candidate(candidates, *choice);
        it->used_cpu_mi += task.mi;
        it->used_mem_gb += task.ram_gb;
        it->used_stor_gb += kb_to_gb(task.data_in_kb + task.data_out_kb);
        resolved = true;
      } else {
        result.transactions.push_back({0.0, *choice, true});
        ++result.failures;
        candidates.erase(find_candidate(candidates, *choice));
        reps.erase(*choice);
        scores.erase(*choice);
      }
    }

    if (!resolved) {
      // Nothing satisfiable: run on the device, still leaving a record.
      ++dec.attempts;
      const auto outcome = hooks.execute(t, local_node_id);
      if (!outcome.success) {
        throw std::runtime_error("on-device fallback reported a failure");
      }
      result.transactions.push_back({outcome.elapsed_ms, local_node_id, false});
      result.app_elapsed_ms += outcome.elapsed_ms;
      dec.fallback_local = true;
      dec.chosen_node = local_node_id;
      dec.measured_rt_ms = outcome.elapsed_ms;
    }
    dec.decision_wall_ms = timer.total_ms();
    result.decisions.push_back(dec);
    completed.insert(t);
  }

  return result;
}

} // namespace fresco::decision
