#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fresco/decision/engine.hpp"
#include "fresco/ledger/ledger.hpp"

namespace fresco::decision {

enum class EngineKind { Fresco, Minlp, Sq };

std::string to_string(EngineKind kind);
EngineKind engine_from_string(const std::string& text);

struct EngineParams {
  ScoreWeights weights;
  int top_k = 3;
  // Wall-clock timing of the decision path varies between otherwise identical
  // runs, so it is opt-in; with it off decision_wall_ms stays zero.
  bool measure_decision_time = false;
};

struct OffloadOutcome {
  bool success = true;
  // Measured response time on success; wasted transfer time on failure.
  double elapsed_ms = 0.0;
};

// Callbacks supplied by the environment driving the offloader.
struct OffloadHooks {
  // Refresh every candidate's prediction for this task against the current
  // load snapshot (clear `predicted` where the model reports instability).
  std::function<void(int task_index, std::vector<Candidate>&)> predict;
  // Run the task on the chosen node and report the outcome.
  std::function<OffloadOutcome(int task_index, int node_id)> execute;
  // Remaining device energy in joules at solve time.
  std::function<double()> battery_remaining_j;
  // Reputation for exactly the candidates passed in (typically ledger reads).
  std::function<RepMap(const std::vector<Candidate>&)> read_reputations;
};

struct TaskDecision {
  int task_index = -1;
  int chosen_node = -1; // -1 = skipped (no candidates were supplied at all)
  bool forced_local = false;   // task is device-bound by its own flag
  bool fallback_local = false; // no satisfiable assignment; ran on the device
  double measured_rt_ms = 0.0;
  int attempts = 0;   // execution attempts including failed ones
  int considered = 0; // candidates carrying predictions when first solved
  double decision_wall_ms = 0.0;
};

struct OffloadResult {
  std::vector<ledger::TransactionRecord> transactions;
  std::vector<TaskDecision> decisions;
  double app_elapsed_ms = 0.0;
  int failures = 0;
};

// Runs one application session task by task: predict once per task, score
// once, then select-execute with retry. A failed attempt costs its wasted
// transfer time, leaves a flagged transaction and removes the node from the
// running pool; an unsatisfiable solve falls back to on-device execution
// (which still produces a transaction). Device-bound tasks run locally
// without any transaction.
OffloadResult fresco_offload(const workload::AppDag& app, EngineKind engine,
                             const EngineParams& params, ConstraintSet base,
                             int local_node_id,
                             std::vector<Candidate> candidates,
                             const OffloadHooks& hooks);

} // namespace fresco::decision
