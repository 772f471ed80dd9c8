#include "fresco/decision/engine.hpp"
#include "fresco/decision/offload.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fresco/units.hpp"
#include "fresco/workload/catalog.hpp"

using namespace fresco;
using namespace fresco::decision;
using infra::Tier;

namespace {

Candidate cand(int id, Tier tier, double rt_ms, double energy_j, double price,
               double queue_ms = 0.0) {
  Candidate c;
  c.node_id = id;
  c.tier = tier;
  c.predicted = Prediction{rt_ms, energy_j, price, queue_ms, {}};
  c.cpu_budget_mi = 1e12;
  c.mem_gb = 1e12;
  c.stor_gb = 1e12;
  return c;
}

ConstraintSet relaxed() {
  ConstraintSet c;
  c.nabla_ms = {{Tier::Edge, 1e9}, {Tier::Cloud, 1e9}, {Tier::Mobile, 1e9}};
  c.deadline_ms = 1e12;
  c.battery_remaining_j = 1e9;
  return c;
}

workload::TaskSpec small_task() {
  workload::TaskSpec t;
  t.name = "probe";
  t.kind = workload::TaskKind::CI;
  t.mi = 600.0;
  t.data_in_kb = 6.0;
  t.data_out_kb = 6.0;
  t.ram_gb = 1.0;
  return t;
}

ledger::FixedRep rep(double value) { return ledger::fixed_from_double(value); }

} // namespace

TEST_CASE("local optima are component-wise minima over predicted candidates") {
  std::vector<Candidate> cs = {
      cand(0, Tier::Edge, 400.0, 2.0, 5.0),
      cand(1, Tier::Cloud, 100.0, 3.5, 9.0),
      cand(2, Tier::Mobile, 900.0, 0.5, 1.0),
  };
  const auto opt = local_optima(cs);
  REQUIRE(opt.has_value());
  CHECK(opt->rt_ms == 100.0);
  CHECK(opt->energy_j == 0.5);
  CHECK(opt->price == 1.0);

  cs[1].predicted.reset(); // the latency leader drops out
  const auto opt2 = local_optima(cs);
  REQUIRE(opt2.has_value());
  CHECK(opt2->rt_ms == 400.0);

  for (auto& c : cs) c.predicted.reset();
  CHECK_FALSE(local_optima(cs).has_value());
  CHECK_FALSE(local_optima({}).has_value());
}

TEST_CASE("score blends latency in seconds with energy and price gaps") {
  const Candidate c = cand(7, Tier::Edge, 400.0, 2.0, 5.0);
  const Optima opt{100.0, 0.5, 1.0};
  const ScoreWeights w{0.5, 0.4, 0.1};
  // 0.5*0.3 s + 0.4*1.5 J + 0.1*4.0 = 1.15
  CHECK(score(c, opt, w) == doctest::Approx(1.15).epsilon(1e-12));

  const ScoreWeights latency_only{1.0, 0.0, 0.0};
  CHECK(score(c, opt, latency_only) == doctest::Approx(0.3).epsilon(1e-12));

  const Candidate at_optimum = cand(8, Tier::Edge, 100.0, 0.5, 1.0);
  CHECK(score(at_optimum, opt, w) == 0.0);

  Candidate blind = c;
  blind.predicted.reset();
  CHECK_THROWS_AS(score(blind, opt, w), std::invalid_argument);
  CHECK_THROWS_AS(score(c, opt, ScoreWeights{0.5, 0.4, 0.2}), std::domain_error);
  CHECK_THROWS_AS(score(c, opt, ScoreWeights{-0.1, 1.0, 0.1}), std::domain_error);
}

TEST_CASE("score_all covers exactly the predicted candidates") {
  std::vector<Candidate> cs = {
      cand(3, Tier::Edge, 200.0, 1.0, 2.0),
      cand(5, Tier::Cloud, 150.0, 2.0, 8.0),
  };
  cs.push_back(cand(9, Tier::Edge, 0.0, 0.0, 0.0));
  cs.back().predicted.reset();

  const auto opt = *local_optima(cs);
  const ScoreWeights w{0.5, 0.4, 0.1};
  const auto scores = score_all(cs, opt, w);
  REQUIRE(scores.size() == 2);
  CHECK(scores.at(3) == score(cs[0], opt, w));
  CHECK(scores.at(5) == score(cs[1], opt, w));
  CHECK(scores.count(9) == 0);
}

TEST_CASE("reputation threshold is the k-th best score present") {
  RepMap reps = {{0, rep(0.9)}, {1, rep(0.8)}, {2, rep(0.7)}, {3, rep(0.6)}};
  CHECK(reputation_threshold(reps, 1) == rep(0.9).raw);
  CHECK(reputation_threshold(reps, 3) == rep(0.7).raw);
  CHECK(reputation_threshold(reps, 4) == rep(0.6).raw);
  CHECK(reputation_threshold(reps, 10) == rep(0.6).raw); // fewer than k present
  CHECK_THROWS_AS(reputation_threshold(reps, 0), std::domain_error);
  CHECK_THROWS_AS(reputation_threshold({}, 3), std::domain_error);

  const RepMap tied = {{0, rep(0.8)}, {1, rep(0.8)}, {2, rep(0.5)}};
  CHECK(reputation_threshold(tied, 2) == rep(0.8).raw);
  CHECK(reputation_threshold(tied, 3) == rep(0.5).raw);
}

TEST_CASE("constraint validation rejects malformed bounds") {
  ConstraintSet c = relaxed();
  CHECK_NOTHROW(c.validate());
  c.deadline_ms = 0.0;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = relaxed();
  c.rep_threshold_raw = ledger::kRepScale + 1;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = relaxed();
  c.nabla_ms.clear();
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = relaxed();
  c.nabla_ms[Tier::Edge] = 0.0;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = relaxed();
  c.app_elapsed_ms = -1.0;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("constrained selection filters and takes the score argmin") {
  const ScoreWeights w{0.5, 0.4, 0.1};
  std::vector<Candidate> cs = {
      cand(0, Tier::Edge, 40.0, 0.30, 1.0),
      cand(1, Tier::Edge, 25.0, 0.40, 2.0),
      cand(2, Tier::Cloud, 120.0, 0.10, 0.5),
  };
  RepMap reps = {{0, rep(1.0)}, {1, rep(1.0)}, {2, rep(1.0)}};
  const auto opt = *local_optima(cs);
  const auto scores = score_all(cs, opt, w);
  const auto task = small_task();

  SUBCASE("unconstrained: plain argmin") {
    const auto v = smt_select(scores, cs, reps, relaxed(), task);
    REQUIRE_FALSE(v.unsat());
    int expect = 0;
    for (const auto& [id, s] : scores) {
      if (s < scores.at(expect)) expect = id;
    }
    CHECK(*v.node_id == expect);
    CHECK(v.score == scores.at(expect));
  }

  SUBCASE("tier latency budget removes over-budget candidates") {
    auto constr = relaxed();
    constr.nabla_ms[Tier::Edge] = 30.0; // node 0 at 40 ms is out
    constr.nabla_ms[Tier::Cloud] = 100.0; // node 2 at 120 ms is out
    const auto v = smt_select(scores, cs, reps, constr, task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 1);
  }

  SUBCASE("reputation floor can empty the pool") {
    reps = {{0, rep(0.4)}, {1, rep(0.4)}, {2, rep(0.4)}};
    auto constr = relaxed();
    constr.rep_threshold_raw = rep(0.5).raw;
    CHECK(smt_select(scores, cs, reps, constr, task).unsat());
    // The reputation-blind variant still solves.
    CHECK_FALSE(minlp_select(scores, cs, constr, task).unsat());
  }

  SUBCASE("battery gate") {
    auto constr = relaxed();
    constr.battery_remaining_j = 0.05; // every candidate needs more
    CHECK(smt_select(scores, cs, reps, constr, task).unsat());
    constr.battery_remaining_j = 0.15; // only node 2 at 0.10 J fits
    const auto v = smt_select(scores, cs, reps, constr, task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 2);
  }

  SUBCASE("deadline counts time already spent") {
    auto constr = relaxed();
    constr.deadline_ms = 100.0;
    constr.app_elapsed_ms = 70.0; // only <=30 ms completions survive
    const auto v = smt_select(scores, cs, reps, constr, task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 1);
    constr.app_elapsed_ms = 99.0;
    CHECK(smt_select(scores, cs, reps, constr, task).unsat());
  }

  SUBCASE("price cap") {
    auto constr = relaxed();
    constr.price_cap = 0.75;
    const auto v = smt_select(scores, cs, reps, constr, task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 2);
  }

  SUBCASE("cumulative capacity on the target") {
    auto loaded = cs;
    loaded[0].cpu_budget_mi = 1000.0;
    loaded[0].used_cpu_mi = 500.0; // + task 600 overflows
    loaded[1].mem_gb = 4.0;
    loaded[1].used_mem_gb = 3.5; // + task 1.0 overflows
    const auto v = smt_select(scores, loaded, reps, relaxed(), task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 2);

    loaded[2].stor_gb = kb_to_gb(10.0); // task moves 12 KB
    CHECK(smt_select(scores, loaded, reps, relaxed(), task).unsat());
  }

  SUBCASE("unready task is unsatisfiable outright") {
    auto constr = relaxed();
    constr.task_ready = false;
    CHECK(smt_select(scores, cs, reps, constr, task).unsat());
  }

  SUBCASE("equal scores break to the lower node id") {
    std::vector<Candidate> twins = {
        cand(4, Tier::Edge, 50.0, 1.0, 2.0),
        cand(6, Tier::Edge, 50.0, 1.0, 2.0),
    };
    RepMap r2 = {{4, rep(1.0)}, {6, rep(1.0)}};
    const auto o2 = *local_optima(twins);
    const auto s2 = score_all(twins, o2, w);
    REQUIRE(s2.at(4) == s2.at(6));
    const auto v = smt_select(s2, twins, r2, relaxed(), task);
    REQUIRE_FALSE(v.unsat());
    CHECK(*v.node_id == 4);
  }

  SUBCASE("missing reputation entry is a caller bug") {
    reps.erase(1);
    CHECK_THROWS_AS(smt_select(scores, cs, reps, relaxed(), task),
                    std::invalid_argument);
  }

  SUBCASE("missing tier budget is a caller bug") {
    auto constr = relaxed();
    constr.nabla_ms.erase(Tier::Cloud);
    CHECK_THROWS_AS(smt_select(scores, cs, reps, constr, task),
                    std::invalid_argument);
  }
}

TEST_CASE("reputation-and-queue policy ranks by trust then queue") {
  std::vector<Candidate> cs = {
      cand(0, Tier::Edge, 0, 0, 0, /*queue=*/30.0),
      cand(1, Tier::Edge, 0, 0, 0, /*queue=*/5.0),
      cand(2, Tier::Edge, 0, 0, 0, /*queue=*/1.0),
      cand(3, Tier::Cloud, 0, 0, 0, /*queue=*/0.0),
  };
  RepMap reps = {{0, rep(1.0)}, {1, rep(0.9)}, {2, rep(0.5)}, {3, rep(1.0)}};

  SUBCASE("cloud is never considered, even at the best queue and trust") {
    const auto pick = sq_select(cs, reps, 4);
    REQUIRE(pick.has_value());
    CHECK(*pick != 3);
  }

  SUBCASE("k=1 is the most reputable regardless of its queue") {
    CHECK(*sq_select(cs, reps, 1) == 0);
  }

  SUBCASE("within the top-k the shortest queue wins") {
    CHECK(*sq_select(cs, reps, 2) == 1);
    CHECK(*sq_select(cs, reps, 3) == 2);
  }

  SUBCASE("ties in reputation break to the lower id before truncation") {
    reps = {{0, rep(0.9)}, {1, rep(0.9)}, {2, rep(0.9)}, {3, rep(1.0)}};
    // All tied: k=2 keeps {0,1}; queue then favours 1.
    CHECK(*sq_select(cs, reps, 2) == 1);
  }

  SUBCASE("unpredicted candidates cannot be picked") {
    cs[2].predicted.reset();
    CHECK(*sq_select(cs, reps, 3) == 1);
  }

  SUBCASE("empty pool reports no pick") {
    std::vector<Candidate> only_cloud = {cand(3, Tier::Cloud, 0, 0, 0)};
    CHECK_FALSE(sq_select(only_cloud, reps, 3).has_value());
    CHECK_FALSE(sq_select({}, reps, 3).has_value());
  }

  SUBCASE("k below one is rejected") {
    CHECK_THROWS_AS(sq_select(cs, reps, 0), std::domain_error);
  }
}

// ---------------------------------------------------------------------------
// Randomized equivalence against a brute-force oracle: enumerate, filter,
// sort. Structured differently from the production scan on purpose.
// ---------------------------------------------------------------------------

namespace {

struct Instance {
  std::vector<Candidate> candidates;
  RepMap reps;
  ConstraintSet constr;
  ScoreWeights weights;
  workload::TaskSpec task;
  int k = 3;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(1, 12);
  std::uniform_int_distribution<int> tier_dist(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> rt_steps(1, 20);    // 50..1000 ms
  std::uniform_int_distribution<int> e_steps(0, 10);     // 0..5 J
  std::uniform_int_distribution<int> p_steps(0, 10);     // 0..50
  std::uniform_int_distribution<int> q_steps(0, 10);     // 0..500 ms
  std::uniform_int_distribution<int> rep_steps(0, 5);    // 0,0.2,...,1.0

  Instance inst;
  const int n = n_dist(rng);
  std::vector<int> ids(30);
  for (int i = 0; i < 30; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);

  for (int i = 0; i < n; ++i) {
    Candidate c;
    c.node_id = ids[i];
    c.tier = static_cast<Tier>(tier_dist(rng));
    if (unit(rng) < 0.85) {
      c.predicted = Prediction{50.0 * rt_steps(rng), 0.5 * e_steps(rng),
                               5.0 * p_steps(rng), 50.0 * q_steps(rng), {}};
    }
    c.cpu_budget_mi = 800.0 + 1400.0 * unit(rng);
    c.used_cpu_mi = 1000.0 * unit(rng);
    c.mem_gb = 2.0 + 6.0 * unit(rng);
    c.used_mem_gb = 2.0 * unit(rng);
    c.stor_gb = kb_to_gb(30.0 + 40.0 * unit(rng));
    c.used_stor_gb = kb_to_gb(15.0 * unit(rng));
    inst.candidates.push_back(c);
    inst.reps[c.node_id] = ledger::FixedRep{rep_steps(rng) * 200'000};
  }

  inst.k = 1 + static_cast<int>(unit(rng) * 5.0);
  inst.constr.nabla_ms = {{Tier::Edge, 50.0 + 1150.0 * unit(rng)},
                          {Tier::Cloud, 50.0 + 1150.0 * unit(rng)},
                          {Tier::Mobile, 50.0 + 1150.0 * unit(rng)}};
  inst.constr.deadline_ms = 500.0 + 2500.0 * unit(rng);
  inst.constr.app_elapsed_ms = 0.5 * inst.constr.deadline_ms * unit(rng);
  inst.constr.battery_remaining_j = 2.0 + 18.0 * unit(rng);
  inst.constr.price_cap =
      unit(rng) < 0.3 ? std::numeric_limits<double>::infinity()
                      : 60.0 * unit(rng);
  inst.constr.rep_threshold_raw = reputation_threshold(inst.reps, inst.k);
  inst.constr.task_ready = unit(rng) > 0.02;

  double a = unit(rng), b = unit(rng), g = unit(rng);
  const double sum = a + b + g;
  if (sum <= 0.0) {
    inst.weights = {1.0, 0.0, 0.0};
  } else {
    inst.weights = {a / sum, b / sum, 1.0 - a / sum - b / sum};
  }

  inst.task = small_task();
  inst.task.mi = 100.0 + 700.0 * unit(rng);
  inst.task.ram_gb = 2.0 * unit(rng);
  inst.task.data_in_kb = 15.0 * unit(rng);
  inst.task.data_out_kb = 15.0 * unit(rng);
  return inst;
}

bool oracle_ok(const Candidate& c, const Instance& inst, bool use_reputation) {
  if (!c.predicted || !inst.constr.task_ready) return false;
  const auto& p = *c.predicted;
  if (use_reputation &&
      inst.reps.at(c.node_id).raw < inst.constr.rep_threshold_raw) {
    return false;
  }
  if (p.energy_j > inst.constr.battery_remaining_j) return false;
  if (c.used_stor_gb + kb_to_gb(inst.task.data_in_kb + inst.task.data_out_kb) >
      c.stor_gb) {
    return false;
  }
  if (c.used_cpu_mi + inst.task.mi > c.cpu_budget_mi) return false;
  if (c.used_mem_gb + inst.task.ram_gb > c.mem_gb) return false;
  if (p.rt_ms > inst.constr.nabla_ms.at(c.tier)) return false;
  if (p.price > inst.constr.price_cap) return false;
  if (inst.constr.app_elapsed_ms + p.rt_ms > inst.constr.deadline_ms) return false;
  return true;
}

std::optional<int> oracle_select(const Instance& inst, const ScoreMap& scores,
                                 bool use_reputation) {
  std::vector<std::pair<double, int>> feasible;
  for (const auto& c : inst.candidates) {
    if (oracle_ok(c, inst, use_reputation)) {
      feasible.emplace_back(scores.at(c.node_id), c.node_id);
    }
  }
  if (feasible.empty()) return std::nullopt;
  std::sort(feasible.begin(), feasible.end());
  return feasible.front().second;
}

std::optional<int> oracle_sq(const Instance& inst) {
  std::vector<const Candidate*> pool;
  for (const auto& c : inst.candidates) {
    if (c.tier != Tier::Cloud && c.predicted) pool.push_back(&c);
  }
  std::sort(pool.begin(), pool.end(), [&](const Candidate* x, const Candidate* y) {
    const auto rx = inst.reps.at(x->node_id).raw;
    const auto ry = inst.reps.at(y->node_id).raw;
    return rx != ry ? rx > ry : x->node_id < y->node_id;
  });
  if (pool.size() > static_cast<std::size_t>(inst.k)) pool.resize(inst.k);
  std::vector<std::pair<double, int>> queue_order;
  for (const auto* c : pool) {
    queue_order.emplace_back(c->predicted->queue_wait_ms, c->node_id);
  }
  if (queue_order.empty()) return std::nullopt;
  std::sort(queue_order.begin(), queue_order.end());
  return queue_order.front().second;
}

} // namespace

TEST_CASE("solvers agree with the brute-force oracle across random instances") {
  std::mt19937_64 rng(0xfe5c0d3cULL);
  int sat = 0, unsat = 0, sq_picked = 0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const Instance inst = random_instance(rng);
    const auto opt = local_optima(inst.candidates);
    ScoreMap scores;
    if (opt) scores = score_all(inst.candidates, *opt, inst.weights);

    const auto got_smt =
        smt_select(scores, inst.candidates, inst.reps, inst.constr, inst.task);
    const auto want_smt = oracle_select(inst, scores, true);
    REQUIRE(got_smt.node_id == want_smt);
    if (want_smt) {
      REQUIRE(got_smt.score == scores.at(*want_smt));
      ++sat;
    } else {
      ++unsat;
    }

    const auto got_minlp =
        minlp_select(scores, inst.candidates, inst.constr, inst.task);
    REQUIRE(got_minlp.node_id == oracle_select(inst, scores, false));

    const auto got_sq = sq_select(inst.candidates, inst.reps, inst.k);
    REQUIRE(got_sq == oracle_sq(inst));
    if (got_sq) ++sq_picked;
  }
  // The generator must exercise both branches heavily.
  CHECK(sat > 1000);
  CHECK(unsat > 1000);
  CHECK(sq_picked > 5000);
}

TEST_CASE("argmin is invariant under a constant latency shift") {
  std::mt19937_64 rng(0xab5eedULL);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = random_instance(rng);
    const auto opt = local_optima(inst.candidates);
    if (!opt) continue;
    const auto scores = score_all(inst.candidates, *opt, inst.weights);

    Instance shifted = inst;
    for (auto& c : shifted.candidates) {
      if (c.predicted) c.predicted->rt_ms += 250.0;
    }
    // Budgets move along so feasibility is unchanged.
    for (auto& [tier, nabla] : shifted.constr.nabla_ms) nabla += 250.0;
    shifted.constr.deadline_ms += 250.0;
    const auto opt2 = local_optima(shifted.candidates);
    const auto scores2 = score_all(shifted.candidates, *opt2, shifted.weights);

    const auto a = smt_select(scores, inst.candidates, inst.reps, inst.constr,
                              inst.task);
    const auto b = smt_select(scores2, shifted.candidates, shifted.reps,
                              shifted.constr, shifted.task);
    REQUIRE(a.node_id == b.node_id);
  }
}

// ---------------------------------------------------------------------------
// The per-task offload loop.
// ---------------------------------------------------------------------------

namespace {

workload::AppDag one_task_app(bool offloadable = true) {
  workload::AppDag app;
  app.name = workload::AppName::MOBIAR;
  auto t = small_task();
  t.offloadable = offloadable;
  app.tasks = {t};
  app.deadline_ms = 1e6;
  app.constraints = {{Tier::Edge, {18.0, 15.0}},
                     {Tier::Cloud, {1.0, 300.0}},
                     {Tier::Mobile, {300.0, 0.0}}};
  return app;
}

struct ScriptedEnv {
  std::vector<Candidate> candidates;
  std::map<int, Prediction> predictions;
  std::set<int> failing_nodes;
  std::map<int, double> local_rt; // task_index -> on-device elapsed
  RepMap reps;
  double battery = 1000.0;
  double fail_penalty_ms = 40.0;

  int predict_calls = 0;
  int rep_reads = 0;
  std::vector<int> executed_on;

  OffloadHooks hooks(int local_id) {
    OffloadHooks h;
    h.predict = [this](int, std::vector<Candidate>& cs) {
      ++predict_calls;
      for (auto& c : cs) {
        const auto it = predictions.find(c.node_id);
        if (it != predictions.end()) {
          c.predicted = it->second;
        } else {
          c.predicted.reset();
        }
      }
    };
    h.execute = [this, local_id](int task_index, int node_id) {
      executed_on.push_back(node_id);
      if (failing_nodes.count(node_id)) {
        return OffloadOutcome{false, fail_penalty_ms};
      }
      if (node_id == local_id && local_rt.count(task_index)) {
        return OffloadOutcome{true, local_rt.at(task_index)};
      }
      const auto it = predictions.find(node_id);
      return OffloadOutcome{true, it != predictions.end() ? it->second.rt_ms
                                                         : 100.0};
    };
    h.battery_remaining_j = [this] { return battery; };
    h.read_reputations = [this](const std::vector<Candidate>& cs) {
      ++rep_reads;
      RepMap out;
      for (const auto& c : cs) out[c.node_id] = reps.at(c.node_id);
      return out;
    };
    return h;
  }
};

Candidate bare(int id, Tier tier) {
  Candidate c;
  c.node_id = id;
  c.tier = tier;
  c.cpu_budget_mi = 1e12;
  c.mem_gb = 1e12;
  c.stor_gb = 1e12;
  return c;
}

constexpr int kLocal = 99;

} // namespace

TEST_CASE("a failed attempt leaves a flagged record and the retry succeeds") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge), bare(2, Tier::Edge)};
  env.predictions[1] = {80.0, 0.1, 1.0, 5.0, {}};
  env.predictions[2] = {105.0, 0.2, 2.0, 9.0, {}};
  env.failing_nodes = {1}; // the better-scored node is down
  env.reps = {{1, rep(1.0)}, {2, rep(1.0)}};

  const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, {},
                                  relaxed(), kLocal, env.candidates,
                                  env.hooks(kLocal));

  REQUIRE(res.transactions.size() == 2);
  CHECK(res.transactions[0].node_id == 1);
  CHECK(res.transactions[0].failed);
  CHECK(res.transactions[0].measurement_ms == 0.0);
  CHECK(res.transactions[1].node_id == 2);
  CHECK_FALSE(res.transactions[1].failed);
  CHECK(res.transactions[1].measurement_ms == 105.0);
  CHECK(res.failures == 1);
  CHECK(res.app_elapsed_ms == doctest::Approx(40.0 + 105.0));

  REQUIRE(res.decisions.size() == 1);
  const auto& dec = res.decisions[0];
  CHECK(dec.chosen_node == 2);
  CHECK(dec.attempts == 2);
  CHECK(dec.considered == 2);
  CHECK_FALSE(dec.forced_local);
  CHECK_FALSE(dec.fallback_local);
  CHECK(dec.measured_rt_ms == 105.0);
  CHECK(dec.decision_wall_ms == 0.0); // timing defaults off

  // Predictions and scores are made once per task, not per retry.
  CHECK(env.predict_calls == 1);
  CHECK(env.rep_reads == 1);
}

TEST_CASE("an unsatisfiable task falls back to the device with a record") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge)};
  env.predictions[1] = {500.0, 0.1, 1.0, 5.0, {}};
  env.reps = {{1, rep(1.0)}};
  env.local_rt[0] = 300.0;

  auto constr = relaxed();
  constr.nabla_ms[Tier::Edge] = 100.0; // 500 ms prediction cannot fit

  const auto res =
      fresco_offload(one_task_app(), EngineKind::Fresco, {}, constr, kLocal,
                     env.candidates, env.hooks(kLocal));

  REQUIRE(res.transactions.size() == 1);
  CHECK(res.transactions[0].node_id == kLocal);
  CHECK_FALSE(res.transactions[0].failed);
  CHECK(res.transactions[0].measurement_ms == 300.0);
  CHECK(res.failures == 0);
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].fallback_local);
  CHECK(res.decisions[0].chosen_node == kLocal);
  CHECK(res.app_elapsed_ms == 300.0);
}

TEST_CASE("a device-bound task runs locally without any record") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge)};
  env.predictions[1] = {80.0, 0.1, 1.0, 5.0, {}};
  env.reps = {{1, rep(1.0)}};
  env.local_rt[0] = 220.0;

  const auto res = fresco_offload(one_task_app(/*offloadable=*/false),
                                  EngineKind::Fresco, {}, relaxed(), kLocal,
                                  env.candidates, env.hooks(kLocal));

  CHECK(res.transactions.empty());
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].forced_local);
  CHECK(res.decisions[0].chosen_node == kLocal);
  CHECK(res.decisions[0].measured_rt_ms == 220.0);
  CHECK(res.app_elapsed_ms == 220.0);
  CHECK(env.predict_calls == 0); // no decision was needed
  CHECK(env.rep_reads == 0);
}

TEST_CASE("with no candidates at all the task is skipped") {
  ScriptedEnv env;
  const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, {},
                                  relaxed(), kLocal, {}, env.hooks(kLocal));
  CHECK(res.transactions.empty());
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].chosen_node == -1);
  CHECK(env.executed_on.empty());
}

TEST_CASE("a full catalog app records one transaction per offloadable task") {
  const auto app = workload::build_app(workload::AppName::MOBIAR);
  int offloadable = 0;
  for (const auto& t : app.tasks) offloadable += t.offloadable ? 1 : 0;
  REQUIRE(offloadable == 3); // bracketed by two device-bound stages

  ScriptedEnv env;
  env.candidates = {bare(5, Tier::Edge)};
  env.predictions[5] = {20.0, 0.05, 1.0, 2.0, {}};
  env.reps = {{5, rep(1.0)}};
  for (std::size_t i = 0; i < app.tasks.size(); ++i) {
    env.local_rt[static_cast<int>(i)] = 250.0;
  }

  ConstraintSet base = relaxed();
  base.deadline_ms = app.deadline_ms * 1e3; // keep everything satisfiable here

  const auto res = fresco_offload(app, EngineKind::Fresco, {}, base, kLocal,
                                  env.candidates, env.hooks(kLocal));

  REQUIRE(res.transactions.size() == 3);
  for (const auto& tx : res.transactions) {
    CHECK(tx.node_id == 5);
    CHECK_FALSE(tx.failed);
  }
  REQUIRE(res.decisions.size() == app.tasks.size());
  CHECK(res.decisions.front().forced_local); // UPLOAD stage
  CHECK(res.decisions.back().forced_local);  // DOWNLOAD stage
  CHECK(res.app_elapsed_ms == doctest::Approx(3 * 20.0 + 2 * 250.0));
}

TEST_CASE("capacity use accumulates on the winner across tasks") {
  // Two offloadable tasks in a row, same single candidate.
  workload::AppDag app = one_task_app();
  app.tasks.push_back(app.tasks[0]);
  app.tasks[1].name = "probe2";
  app.edges = {{0, 1}};

  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge)};
  env.candidates[0].cpu_budget_mi = 1000.0; // fits one 600-MI task, not two
  env.predictions[1] = {80.0, 0.1, 1.0, 5.0, {}};
  env.reps = {{1, rep(1.0)}};
  env.local_rt[0] = 150.0;
  env.local_rt[1] = 150.0;

  const auto res = fresco_offload(app, EngineKind::Fresco, {}, relaxed(),
                                  kLocal, env.candidates, env.hooks(kLocal));

  REQUIRE(res.decisions.size() == 2);
  CHECK(res.decisions[0].chosen_node == 1);
  CHECK(res.decisions[1].fallback_local); // budget exhausted by task one
  CHECK(res.decisions[1].chosen_node == kLocal);
}

TEST_CASE("the trust floor relaxes as failing leaders drop out") {
  // Highest-scored node is also below the running top-k floor at first.
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge), bare(2, Tier::Edge),
                    bare(3, Tier::Edge), bare(4, Tier::Edge)};
  env.predictions[1] = {90.0, 0.3, 3.0, 5.0, {}};
  env.predictions[2] = {95.0, 0.3, 3.0, 5.0, {}};
  env.predictions[3] = {99.0, 0.3, 3.0, 5.0, {}};
  env.predictions[4] = {40.0, 0.1, 1.0, 5.0, {}}; // best score, lowest trust
  env.reps = {{1, rep(1.0)}, {2, rep(0.9)}, {3, rep(0.8)}, {4, rep(0.2)}};
  env.failing_nodes = {1}; // the first pick goes down

  EngineParams params;
  params.top_k = 3; // floor starts at 0.8, excluding node 4

  const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, params,
                                  relaxed(), kLocal, env.candidates,
                                  env.hooks(kLocal));

  // First solve: node 4 filtered by trust, node 1 wins and fails. After the
  // pool shrinks the floor drops to 0.2 and node 4's score wins.
  REQUIRE(res.transactions.size() == 2);
  CHECK(res.transactions[0].node_id == 1);
  CHECK(res.transactions[0].failed);
  CHECK(res.transactions[1].node_id == 4);
  CHECK(res.decisions[0].chosen_node == 4);
  CHECK(res.decisions[0].attempts == 2);
}

TEST_CASE("the reputation-blind engine never reads the ledger") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge), bare(2, Tier::Edge)};
  env.predictions[1] = {80.0, 0.1, 1.0, 5.0, {}};
  env.predictions[2] = {70.0, 0.1, 1.0, 5.0, {}};
  env.reps = {{1, rep(0.0)}, {2, rep(0.0)}};

  const auto res = fresco_offload(one_task_app(), EngineKind::Minlp, {},
                                  relaxed(), kLocal, env.candidates,
                                  env.hooks(kLocal));
  CHECK(env.rep_reads == 0);
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].chosen_node == 2);
}

TEST_CASE("the queue policy engine retries past failures too") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge), bare(2, Tier::Edge),
                    bare(3, Tier::Cloud)};
  env.predictions[1] = {80.0, 0.1, 1.0, 2.0, {}};
  env.predictions[2] = {85.0, 0.1, 1.0, 9.0, {}};
  env.predictions[3] = {30.0, 0.1, 1.0, 0.0, {}};
  env.reps = {{1, rep(0.9)}, {2, rep(0.9)}, {3, rep(1.0)}};
  env.failing_nodes = {1};

  const auto res = fresco_offload(one_task_app(), EngineKind::Sq, {}, relaxed(),
                                  kLocal, env.candidates, env.hooks(kLocal));
  REQUIRE(res.transactions.size() == 2);
  CHECK(res.transactions[0].node_id == 1); // shortest queue in top-k
  CHECK(res.transactions[0].failed);
  CHECK(res.transactions[1].node_id == 2); // cloud stays out of reach
  CHECK(res.decisions[0].chosen_node == 2);
}

TEST_CASE("battery drain read through the hook gates later tasks") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge)};
  env.predictions[1] = {80.0, 0.5, 1.0, 5.0, {}};
  env.reps = {{1, rep(1.0)}};
  env.battery = 0.4; // cannot afford the predicted 0.5 J
  env.local_rt[0] = 130.0;

  const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, {},
                                  relaxed(), kLocal, env.candidates,
                                  env.hooks(kLocal));
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].fallback_local);
}

TEST_CASE("decision timing is recorded only when asked for") {
  ScriptedEnv env;
  env.candidates = {bare(1, Tier::Edge)};
  env.predictions[1] = {80.0, 0.1, 1.0, 5.0, {}};
  env.reps = {{1, rep(1.0)}};

  EngineParams timed;
  timed.measure_decision_time = true;
  const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, timed,
                                  relaxed(), kLocal, env.candidates,
                                  env.hooks(kLocal));
  REQUIRE(res.decisions.size() == 1);
  CHECK(res.decisions[0].decision_wall_ms > 0.0);
}

TEST_CASE("every failure ends in an on-device completion, never a hang") {
  std::mt19937_64 rng(0x0fffULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ScriptedEnv env;
    const int n = 1 + static_cast<int>(unit(rng) * 6.0);
    for (int i = 0; i < n; ++i) {
      env.candidates.push_back(bare(i + 1, Tier::Edge));
      env.predictions[i + 1] = {50.0 + 100.0 * unit(rng), 0.1, 1.0,
                                10.0 * unit(rng), {}};
      env.reps[i + 1] = rep(1.0);
      env.failing_nodes.insert(i + 1); // everything remote is down
    }
    env.local_rt[0] = 200.0;

    const auto res = fresco_offload(one_task_app(), EngineKind::Fresco, {},
                                    relaxed(), kLocal, env.candidates,
                                    env.hooks(kLocal));
    CHECK(res.failures == n);
    REQUIRE(res.transactions.size() == static_cast<std::size_t>(n) + 1);
    CHECK(res.transactions.back().node_id == kLocal);
    CHECK(res.decisions[0].fallback_local);
    CHECK(res.decisions[0].attempts == n + 1);
  }
}
