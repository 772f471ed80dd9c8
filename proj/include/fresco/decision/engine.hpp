#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "fresco/ledger/fixed_point.hpp"
#include "fresco/perf/queueing.hpp"
#include "fresco/workload/app.hpp"

namespace fresco::decision {

struct Prediction {
  double rt_ms = 0.0;
  double energy_j = 0.0;
  double price = 0.0;
  double queue_wait_ms = 0.0; // server contention component, for the SQ policy
  perf::LatencyBreakdown latency; // kept for failure-penalty bookkeeping
};

struct Candidate {
  int node_id = -1;
  infra::Tier tier = infra::Tier::Edge;
  std::optional<Prediction> predicted; // empty = unstable/infeasible snapshot
  ledger::FixedRep reputation;
  // Episode capacity budget and what this device already placed there.
  double cpu_budget_mi = 0.0;
  double mem_gb = 0.0;
  double stor_gb = 0.0;
  double used_cpu_mi = 0.0;
  double used_mem_gb = 0.0;
  double used_stor_gb = 0.0;
};

struct ScoreWeights {
  double alpha = 0.5;
  double beta = 0.4;
  double gamma = 0.1;

  void validate() const; // non-negative, summing to 1
};

struct ConstraintSet {
  std::map<infra::Tier, double> nabla_ms; // per-tier latency budget
  double deadline_ms = 0.0;
  double price_cap = std::numeric_limits<double>::infinity();
  std::int64_t rep_threshold_raw = 0;
  double app_elapsed_ms = 0.0;
  double battery_remaining_j = 1000.0;
  bool task_ready = true;

  void validate() const;
};

struct SolverVerdict {
  std::optional<int> node_id; // empty = UNSAT
  double score = 0.0;

  bool unsat() const { return !node_id.has_value(); }
};

struct Optima {
  double rt_ms = 0.0;
  double energy_j = 0.0;
  double price = 0.0;
};

using ScoreMap = std::map<int, double>;
using RepMap = std::map<int, ledger::FixedRep>;

// Component-wise minima over candidates carrying predictions; empty when
// every candidate is infeasible.
std::optional<Optima> local_optima(const std::vector<Candidate>& candidates);

// Weighted distance from the per-component optima; latency enters in
// seconds so the three objectives share a comparable magnitude.
double score(const Candidate& candidate, const Optima& optima,
             const ScoreWeights& weights);

ScoreMap score_all(const std::vector<Candidate>& candidates,
                   const Optima& optima, const ScoreWeights& weights);

// k-th largest reputation, or the minimum present when fewer than k.
std::int64_t reputation_threshold(const RepMap& reps, int k);

// Feasibility-filtered argmin of the scores; ties break to the lowest
// node id. Feasibility covers reputation, battery, cumulative capacity,
// readiness, tier latency budget, price cap and the app deadline.
SolverVerdict smt_select(const ScoreMap& scores,
                         const std::vector<Candidate>& candidates,
                         const RepMap& reps, const ConstraintSet& constraints,
                         const workload::TaskSpec& task);

// Identical selection without the reputation constraint.
SolverVerdict minlp_select(const ScoreMap& scores,
                           const std::vector<Candidate>& candidates,
                           const ConstraintSet& constraints,
                           const workload::TaskSpec& task);

// Reputation-and-queue policy: top-k most reputable edge/on-device
// candidates, then the shortest predicted server queue.
std::optional<int> sq_select(const std::vector<Candidate>& candidates,
                             const RepMap& reps, int k);

} // namespace fresco::decision
