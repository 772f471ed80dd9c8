#include "fresco/decision/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fresco/units.hpp"

namespace fresco::decision {

void ScoreWeights::validate() const {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 ||
      std::abs(alpha + beta + gamma - 1.0) > 1e-9) {
    throw std::domain_error("score weights must be non-negative and sum to 1");
  }
}

void ConstraintSet::validate() const {
  if (rep_threshold_raw < 0 || rep_threshold_raw > ledger::kRepScale) {
    throw std::domain_error("reputation threshold outside [0,1]");
  }
  if (!(deadline_ms > 0.0)) throw std::domain_error("deadline must be positive");
  if (app_elapsed_ms < 0.0) throw std::domain_error("elapsed time negative");
  if (nabla_ms.empty()) throw std::domain_error("no tier latency budgets given");
  for (const auto& [tier, nabla] : nabla_ms) {
    if (!(nabla > 0.0)) throw std::domain_error("tier latency budget must be positive");
  }
}

std::optional<Optima> local_optima(const std::vector<Candidate>& candidates) {
  std::optional<Optima> best;
  for (const auto& c : candidates) {
    if (!c.predicted) continue;
    if (!best) {
      best = Optima{c.predicted->rt_ms, c.predicted->energy_j, c.predicted->price};
    } else {
      best->rt_ms = std::min(best->rt_ms, c.predicted->rt_ms);
      best->energy_j = std::min(best->energy_j, c.predicted->energy_j);
      best->price = std::min(best->price, c.predicted->price);
    }
  }
  return best;
}

double score(const Candidate& candidate, const Optima& optima,
             const ScoreWeights& weights) {
  weights.validate();
  if (!candidate.predicted) {
    throw std::invalid_argument("cannot score a candidate without predictions");
  }
  const auto& p = *candidate.predicted;
  return weights.alpha * ms_to_s(p.rt_ms - optima.rt_ms) +
         weights.beta * (p.energy_j - optima.energy_j) +
         weights.gamma * (p.price - optima.price);
}

ScoreMap score_all(const std::vector<Candidate>& candidates,
                   const Optima& optima, const ScoreWeights& weights) {
  ScoreMap scores;
  for (const auto& c : candidates) {
    if (c.predicted) scores[c.node_id] = score(c, optima, weights);
  }
  return scores;
}

std::int64_t reputation_threshold(const RepMap& reps, int k) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  if (reps.empty()) throw std::domain_error("no reputations to rank");
  std::vector<std::int64_t> raws;
  raws.reserve(reps.size());
  for (const auto& [id, rep] : reps) raws.push_back(rep.raw);
  std::sort(raws.begin(), raws.end(), std::greater<>());
  const std::size_t idx = std::min<std::size_t>(k, raws.size()) - 1;
  return raws[idx];
}

namespace {

bool feasible(const Candidate& c, const ConstraintSet& constr,
              const workload::TaskSpec& task, bool check_reputation,
              const RepMap& reps) {
  if (!c.predicted) return false;
  if (!constr.task_ready) return false;
  const auto& p = *c.predicted;
  if (check_reputation) {
    const auto it = reps.find(c.node_id);
    if (it == reps.end()) {
      throw std::invalid_argument("candidate " + std::to_string(c.node_id) +
                                  " has no reputation entry");
    }
    if (it->second.raw < constr.rep_threshold_raw) return false;
  }
  if (constr.battery_remaining_j - p.energy_j < 0.0) return false;
  const double data_gb = kb_to_gb(task.data_in_kb + task.data_out_kb);
  if (c.used_stor_gb + data_gb > c.stor_gb) return false;
  if (c.used_cpu_mi + task.mi > c.cpu_budget_mi) return false;
  if (c.used_mem_gb + task.ram_gb > c.mem_gb) return false;
  const auto nabla = constr.nabla_ms.find(c.tier);
  if (nabla == constr.nabla_ms.end()) {
    throw std::invalid_argument("no latency budget for candidate tier");
  }
  if (p.rt_ms > nabla->second) return false;
  if (p.price > constr.price_cap) return false;
  if (constr.app_elapsed_ms + p.rt_ms > constr.deadline_ms) return false;
  return true;
}

SolverVerdict argmin_feasible(const ScoreMap& scores,
                              const std::vector<Candidate>& candidates,
                              const RepMap& reps, const ConstraintSet& constr,
                              const workload::TaskSpec& task,
                              bool check_reputation) {
  constr.validate();
  SolverVerdict verdict;
  int best_id = -1;
  double best_score = 0.0;
  for (const auto& c : candidates) {
    const auto s = scores.find(c.node_id);
    if (s == scores.end()) continue; // unscored = carried no predictions
    if (!feasible(c, constr, task, check_reputation, reps)) continue;
    if (best_id < 0 || s->second < best_score ||
        (s->second == best_score && c.node_id < best_id)) {
      best_id = c.node_id;
      best_score = s->second;
    }
  }
  if (best_id >= 0) {
    verdict.node_id = best_id;
    verdict.score = best_score;
  }
  return verdict;
}

} // namespace

SolverVerdict smt_select(const ScoreMap& scores,
                         const std::vector<Candidate>& candidates,
                         const RepMap& reps, const ConstraintSet& constraints,
                         const workload::TaskSpec& task) {
  return argmin_feasible(scores, candidates, reps, constraints, task, true);
}

SolverVerdict minlp_select(const ScoreMap& scores,
                           const std::vector<Candidate>& candidates,
                           const ConstraintSet& constraints,
                           const workload::TaskSpec& task) {
  return argmin_feasible(scores, candidates, {}, constraints, task, false);
}

std::optional<int> sq_select(const std::vector<Candidate>& candidates,
                             const RepMap& reps, int k) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  // Cloud never qualifies; unstable candidates never qualify.
  std::vector<const Candidate*> pool;
  for (const auto& c : candidates) {
    if (c.tier == infra::Tier::Cloud || !c.predicted) continue;
    if (!reps.count(c.node_id)) {
      throw std::invalid_argument("candidate " + std::to_string(c.node_id) +
                                  " has no reputation entry");
    }
    pool.push_back(&c);
  }
  if (pool.empty()) return std::nullopt;
  std::sort(pool.begin(), pool.end(), [&](const Candidate* a, const Candidate* b) {
    const auto ra = reps.at(a->node_id).raw, rb = reps.at(b->node_id).raw;
    if (ra != rb) return ra > rb;
    return a->node_id < b->node_id;
  });
  if (pool.size() > static_cast<std::size_t>(k)) pool.resize(k);
  const Candidate* best = pool.front();
  for (const Candidate* c : pool) {
    const double wc = c->predicted->queue_wait_ms;
    const double wb = best->predicted->queue_wait_ms;
    if (wc < wb || (wc == wb && c->node_id < best->node_id)) best = c;
  }
  return best->node_id;
}

} // namespace fresco::decision
