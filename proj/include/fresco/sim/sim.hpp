#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fresco/decision/offload.hpp"
#include "fresco/infra/infrastructure.hpp"
#include "fresco/ledger/ledger.hpp"
#include "fresco/workload/profile.hpp"

namespace fresco::sim {

// Which application the device launches each time: one of the catalog apps
// (fresh per-task values every launch) or a draw from the profile's app mix.
enum class AppSelection { INTRASAFED, MOBIAR, NAVIAR, RANDOM };

std::string to_string(AppSelection sel);
AppSelection app_selection_from_string(const std::string& text);

struct SimConfig {
  std::uint64_t seed = 1;
  int cells = 0;         // 0 = visit every cluster in the map
  double dwell_ms = 0.0; // 0 = episode span evenly split across the cells
  int apps_per_episode = 100;
  int runs = 100;
  AppSelection app_selection = AppSelection::RANDOM;
  workload::WorkloadProfile profile = workload::random_profile();
  decision::ScoreWeights weights{};
  int top_k = 3;
  double consensus_delay_ms = 4000.0;
  // Neutral trust prior for unknown nodes; proven nodes rise above it,
  // failing ones sink below, so the top-k floor can separate them.
  std::int64_t initial_rep_raw = 100'000;
  // The ledger is shared with the ambient user population: at every arrival
  // the surrounding devices post one evaluation round covering every server,
  // so reputation tracks node health in both directions instead of freezing
  // at our own last observation.  Each evaluation carries the node's current
  // service quality (ambient users feel its live queue), which keeps the
  // reputation ranking aligned with genuine attractiveness; a recovered node
  // re-enters the top group at its quality rank instead of being stuck below
  // every never-failed peer.
  bool ambient_rep = true;
  decision::EngineKind engine = decision::EngineKind::Fresco;
  double episode_span_ms = 0.0; // 0 = apps_per_episode * 1000 ms
  bool measure_decision_time = false;
  double price_cap = std::numeric_limits<double>::infinity();
  double cpu_budget_s = 1.0; // per-session compute budget, seconds of capacity

  // Background environment, resampled at every cell entry. Queueing waits are
  // drawn in milliseconds and scaled by the sampled arrival rate relative to
  // the nominal 15 tasks/s, so heavier profiles congest proportionally.
  double bg_exec_wait_lo_ms = 5.0;
  double bg_exec_wait_hi_ms = 40.0;
  double bg_mobile_wait_lo_ms = 1.0;
  double bg_mobile_wait_hi_ms = 8.0;
  double bg_rho_lo = 0.10; // share of channel bandwidth already claimed
  double bg_rho_hi = 0.60;
  double bg_comm_wait_lo_ms = 1.0;
  double bg_comm_wait_hi_ms = 10.0;
  double overload_prob = 0.02; // chance a server saturates for a cell epoch

  void validate() const;
  double span_ms() const {
    return episode_span_ms > 0.0 ? episode_span_ms
                                 : apps_per_episode * 1000.0;
  }
};

enum class EventKind {
  ARRIVAL,
  DECISION,
  OFFLOAD_DONE,
  EXEC_DONE,
  DELIVER_DONE,
  FAILURE,
  LEDGER_COMMIT,
  CELL_MOVE
};

std::string to_string(EventKind kind);

struct Event {
  double time_ms = 0.0;
  EventKind kind = EventKind::ARRIVAL;
  int app = -1;
  int task = -1;
  int node = -1;
  std::uint64_t seq = 0; // insertion order; FIFO among equal timestamps
};

struct MetricsRecord {
  int run = 0;
  int app = 0;
  decision::EngineKind engine = decision::EngineKind::Fresco;
  double rt_ms = 0.0; // whole-application completion time
  double battery_pct = 100.0;
  double cost = 0.0;
  bool violated = false;
  int failures = 0;
  double decision_ms = 0.0; // mean per-task decision wall time
  std::int64_t gas_wei = 0; // ledger gas consumed during this app
  double deadline_ms = 0.0;
  std::vector<infra::Tier> task_tiers; // final placement per task
};

struct PlacementRecord {
  int run = 0;
  int app = 0;
  int task = 0;
  int node = -1;
  infra::Tier tier = infra::Tier::Mobile;
  bool offloadable = false;
  bool fallback = false; // ran on the device because nothing was satisfiable
  double rt_ms = 0.0;
  int attempts = 0;
};

struct RunResult {
  std::vector<MetricsRecord> metrics;
  std::vector<PlacementRecord> placements;
  std::vector<Event> events;
  std::int64_t total_gas = 0;
  int saturated_selected = 0; // must stay zero: solver picked a U>=1 node
};

// Cell occupied at `now`: the episode span is split evenly and every cell is
// visited exactly once, in cluster order.
int advance_mobility(double now_ms, double span_ms, int cells);

// Whole-application deadline check.
bool record_violation(const workload::AppDag& app, double ap_ms);

struct AttemptOutcome {
  bool success = false;
  double elapsed_ms = 0.0; // response time, or the wasted transfer on failure
};

// Success iff the node stays available over the predicted attempt span; a
// failure costs the offload-stage latency before it surfaces.
AttemptOutcome attempt_offload(const infra::Node& node,
                               const decision::Prediction& prediction,
                               double now_ms, double span_ms);

// One full episode on a pre-registered ledger. Deterministic for a given
// (config, infra, run_index); wall-clock timing is recorded only when the
// config opts in and never influences the simulated timeline.
RunResult run_episode(const SimConfig& config,
                      const infra::InfrastructureMap& map,
                      decision::EngineKind engine, ledger::HscLedger& ledger,
                      int run_index = 0);

// Registers every node of the map on a fresh ledger configured per `config`.
ledger::HscLedger make_ledger(const SimConfig& config,
                              const infra::InfrastructureMap& map);

// All runs of the config, each on an isolated fresh ledger; run r derives its
// streams from seed + r.
std::vector<RunResult> run_simulation(const SimConfig& config,
                                      const infra::InfrastructureMap& map);

} // namespace fresco::sim
