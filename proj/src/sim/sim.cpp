#include "fresco/sim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "fresco/perf/cost.hpp"
#include "fresco/perf/energy.hpp"
#include "fresco/perf/queueing.hpp"
#include "fresco/units.hpp"
#include "fresco/workload/catalog.hpp"

namespace fresco::sim {

std::string to_string(AppSelection sel) {
  switch (sel) {
    case AppSelection::INTRASAFED: return "INTRASAFED";
    case AppSelection::MOBIAR: return "MOBIAR";
    case AppSelection::NAVIAR: return "NAVIAR";
    case AppSelection::RANDOM: return "RANDOM";
  }
  throw std::invalid_argument("unknown app selection");
}

AppSelection app_selection_from_string(const std::string& text) {
  if (text == "INTRASAFED") return AppSelection::INTRASAFED;
  if (text == "MOBIAR") return AppSelection::MOBIAR;
  if (text == "NAVIAR") return AppSelection::NAVIAR;
  if (text == "RANDOM") return AppSelection::RANDOM;
  throw std::invalid_argument("unknown app selection: " + text);
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ARRIVAL: return "ARRIVAL";
    case EventKind::DECISION: return "DECISION";
    case EventKind::OFFLOAD_DONE: return "OFFLOAD_DONE";
    case EventKind::EXEC_DONE: return "EXEC_DONE";
    case EventKind::DELIVER_DONE: return "DELIVER_DONE";
    case EventKind::FAILURE: return "FAILURE";
    case EventKind::LEDGER_COMMIT: return "LEDGER_COMMIT";
    case EventKind::CELL_MOVE: return "CELL_MOVE";
  }
  throw std::invalid_argument("unknown event kind");
}

void SimConfig::validate() const {
  if (apps_per_episode < 1 || runs < 1) {
    throw std::domain_error("episode and run counts must be positive");
  }
  if (top_k < 1) throw std::domain_error("top_k must be >= 1");
  if (cells < 0 || dwell_ms < 0.0 || episode_span_ms < 0.0) {
    throw std::domain_error("cells, dwell and span cannot be negative");
  }
  if (consensus_delay_ms < 0.0) {
    throw std::domain_error("consensus delay cannot be negative");
  }
  if (initial_rep_raw < 0 || initial_rep_raw > ledger::kRepScale) {
    throw std::domain_error("trust prior must sit in [0, 1]");
  }
  if (!(cpu_budget_s > 0.0)) {
    throw std::domain_error("compute budget must be positive");
  }
  if (!(price_cap > 0.0)) throw std::domain_error("price cap must be positive");
  weights.validate();
  profile.validate();
  auto range_ok = [](double lo, double hi) { return lo >= 0.0 && hi >= lo; };
  if (!range_ok(bg_exec_wait_lo_ms, bg_exec_wait_hi_ms) ||
      !range_ok(bg_mobile_wait_lo_ms, bg_mobile_wait_hi_ms) ||
      !range_ok(bg_comm_wait_lo_ms, bg_comm_wait_hi_ms)) {
    throw std::domain_error("background wait ranges must satisfy 0 <= lo <= hi");
  }
  if (!(bg_rho_lo >= 0.0 && bg_rho_hi >= bg_rho_lo && bg_rho_hi < 1.0)) {
    throw std::domain_error("channel occupancy range must sit in [0, 1)");
  }
  if (overload_prob < 0.0 || overload_prob > 1.0) {
    throw std::domain_error("overload probability must sit in [0, 1]");
  }
}

int advance_mobility(double now_ms, double span_ms, int cells) {
  if (cells < 1) throw std::domain_error("need at least one cell");
  if (!(span_ms > 0.0)) throw std::domain_error("episode span must be positive");
  if (now_ms < 0.0) throw std::domain_error("time cannot be negative");
  const double dwell = span_ms / cells;
  const int cell = static_cast<int>(now_ms / dwell);
  return std::min(cell, cells - 1);
}

bool record_violation(const workload::AppDag& app, double ap_ms) {
  return ap_ms > app.deadline_ms;
}

AttemptOutcome attempt_offload(const infra::Node& node,
                               const decision::Prediction& prediction,
                               double now_ms, double span_ms) {
  if (!(span_ms > 0.0)) throw std::domain_error("episode span must be positive");
  const double eps = 1e-9;
  const double t0 = std::clamp(now_ms / span_ms, 0.0, 1.0 - eps);
  const double t1 =
      std::clamp((now_ms + prediction.rt_ms) / span_ms, t0, 1.0 - eps);
  if (node.availability.covers(t0, t1)) {
    return {true, prediction.rt_ms};
  }
  return {false, prediction.latency.t_offload_ms};
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kAppStream = 0xA7700000ULL;
constexpr std::uint64_t kBgStream = 0xB6600000ULL;

// Ambient evaluations measure a reference compute-bound request against this
// quota, so their incentives mirror each node's live service quality.
constexpr double kAmbientNabla = 1000.0;
constexpr double kAmbientRefMi = 600.0;
constexpr int kAmbientRaters = 3;

// Ambient queueing pressure on a thin edge box is inversely proportional to
// its capacity: the sampled wait ranges are calibrated for this instruction
// rate and grow on constrained servers.  The datacenter is multi-tenant, so
// its ambient load scales with capacity and it keeps the full wait draw.
constexpr double kWaitRefMips = 44'800.0;

struct NodeBg {
  double exec_wait_ms = 0.0;
  bool overloaded = false;
};

struct ClassBg {
  double up_wait_ms = 0.0;
  double down_wait_ms = 0.0;
};

struct CellBg {
  double lambda = 15.0; // ambient arrival intensity for this epoch
  double rho = 0.0;     // claimed share of the cell's radio spectrum
  std::vector<NodeBg> nodes;
  std::map<infra::NodeClass, ClassBg> classes;
};

// Background state for one cell epoch, keyed only by (seed, epoch) so every
// engine sees the same environment regardless of its decisions.
CellBg draw_bg(const SimConfig& cfg, const infra::InfrastructureMap& map,
               std::uint64_t seed, int epoch) {
  std::mt19937_64 rng(mix(seed, kBgStream + static_cast<std::uint64_t>(epoch)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  CellBg bg;
  bg.lambda = draw(cfg.profile.lambda_lo, cfg.profile.lambda_hi);
  const double scale = bg.lambda / 15.0; // waits grow with arrival intensity
  const double p_overload = std::min(0.5, cfg.overload_prob * scale);
  // One congestion level for the whole cell: every class shares the same
  // spectrum, so a busy epoch squeezes all channels together.
  bg.rho = draw(cfg.bg_rho_lo, cfg.bg_rho_hi);

  bg.nodes.resize(map.nodes.size());
  for (std::size_t id = 0; id < map.nodes.size(); ++id) {
    NodeBg& nb = bg.nodes[id];
    const infra::NodeSpec& spec = map.nodes[id].spec;
    const bool mobile = spec.cls == infra::NodeClass::MOBILE;
    const double capacity =
        spec.cls == infra::NodeClass::CD ? 1.0 : kWaitRefMips / spec.mips();
    nb.exec_wait_ms =
        mobile ? draw(cfg.bg_mobile_wait_lo_ms, cfg.bg_mobile_wait_hi_ms) * scale
               : draw(cfg.bg_exec_wait_lo_ms, cfg.bg_exec_wait_hi_ms) * scale *
                     capacity;
    const double p = unit(rng);
    nb.overloaded = !mobile && p < p_overload;
  }
  for (const auto& [cls, channel] : map.channels) {
    ClassBg cb;
    cb.up_wait_ms = draw(cfg.bg_comm_wait_lo_ms, cfg.bg_comm_wait_hi_ms) * scale;
    cb.down_wait_ms = draw(cfg.bg_comm_wait_lo_ms, cfg.bg_comm_wait_hi_ms) * scale;
    bg.classes[cls] = cb;
  }
  return bg;
}

struct EventOrder {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
    return a.seq > b.seq; // FIFO among equal timestamps
  }
};

struct CachedPrediction {
  decision::Prediction prediction;
  perf::ChannelPair channels;
};

class Episode {
 public:
  Episode(const SimConfig& cfg, const infra::InfrastructureMap& map,
          decision::EngineKind engine, ledger::HscLedger& ledger, int run_index)
      : cfg_(cfg),
        map_(map),
        engine_(engine),
        ledger_(ledger),
        run_(run_index),
        seed_(cfg.seed + static_cast<std::uint64_t>(run_index)),
        span_(cfg.span_ms()) {
    cfg_.validate();
    if (map_.cells.empty() || map_.nodes.empty()) {
      throw std::invalid_argument("infrastructure map is empty");
    }
    cells_ = cfg_.cells > 0 ? cfg_.cells : static_cast<int>(map_.cells.size());
    if (cells_ > static_cast<int>(map_.cells.size())) {
      throw std::invalid_argument("config references more cells than the map has");
    }
    dwell_ = cfg_.dwell_ms > 0.0 ? cfg_.dwell_ms : span_ / cells_;
    for (const auto& node : map_.nodes) {
      if (!ledger_.is_registered(node.id)) {
        throw std::invalid_argument("ledger is missing node " +
                                    std::to_string(node.id));
      }
    }
  }

  RunResult run() {
    for (int k = 1; k < cells_; ++k) {
      push_event(k * dwell_, EventKind::CELL_MOVE, -1, -1, k);
    }
    for (int a = 0; a < cfg_.apps_per_episode; ++a) {
      run_app(a);
    }
    drain_all();
    result_.total_gas = ledger_.gas_used();
    return std::move(result_);
  }

 private:
  int epoch_of(double now) const {
    const int e = static_cast<int>(now / dwell_);
    return std::min(e, cells_ - 1);
  }

  const CellBg& bg_at(int epoch) {
    auto it = bg_cache_.find(epoch);
    if (it == bg_cache_.end()) {
      it = bg_cache_.emplace(epoch, draw_bg(cfg_, map_, seed_, epoch)).first;
    }
    return it->second;
  }

  void push_event(double t, EventKind kind, int app, int task, int node) {
    queue_.push(Event{t, kind, app, task, node, next_seq_++});
  }

  void drain_to(double now) {
    while (!queue_.empty() && queue_.top().time_ms <= now) {
      result_.events.push_back(queue_.top());
      queue_.pop();
    }
  }

  void drain_all() {
    while (!queue_.empty()) {
      result_.events.push_back(queue_.top());
      queue_.pop();
    }
  }

  perf::ChannelPair channels_for(infra::NodeClass cls, const CellBg& bg) const {
    infra::Channel up = map_.channels.at(cls);
    up.bw_util = bg.rho * up.bw_total;
    return {up, up};
  }

  static std::vector<perf::FlowGen> flow_for(const infra::Channel& ch,
                                             double wait_ms, double rate) {
    // One aggregate generator whose offered bits make the sharing delay land
    // exactly on the sampled wait.
    const double spare = ch.bw_total - ch.bw_util;
    return {{rate, ms_to_s(wait_ms) * spare / rate}};
  }

  static std::vector<perf::ExecGen> exec_for(const NodeBg& nb,
                                             const infra::NodeSpec& spec) {
    if (nb.overloaded) return {{1.0, 1.2 * spec.mips()}};
    return {{1.0, ms_to_s(nb.exec_wait_ms)}};
  }

  // One round of third-party evaluations: every server the ambient population
  // can reach gets fresh success or failure records reflecting its live state
  // and queueing quality.  Several ambient users rate each server per round,
  // so a single device's own transactions cannot outvote the population's
  // view of a healthy node.  Committed after the usual consensus delay, so
  // the information reaches us one arrival later.
  void ambient_round(const CellBg& bg) {
    const double t = std::clamp(now_ / span_, 0.0, 1.0 - 1e-9);
    std::vector<ledger::TransactionRecord> records;
    records.reserve(map_.nodes.size() * kAmbientRaters);
    for (const infra::Node& node : map_.nodes) {
      if (node.id == map_.mobile_id()) continue;
      ledger::TransactionRecord record{0.0, node.id, true};
      if (node.availability.is_available(t)) {
        const NodeBg& nb = bg.nodes[static_cast<std::size_t>(node.id)];
        const double rt_ref =
            nb.overloaded ? kAmbientNabla
                          : nb.exec_wait_ms +
                                s_to_ms(kAmbientRefMi / node.spec.mips());
        record = {std::min(rt_ref, kAmbientNabla), node.id, false};
      }
      for (int i = 0; i < kAmbientRaters; ++i) records.push_back(record);
    }
    ledger_.update_node_reputation(
        records, [](int) { return kAmbientNabla; }, now_);
  }

  std::vector<decision::Candidate> make_candidates(int cell) const {
    std::vector<int> ids(map_.cells[cell].members);
    ids.push_back(map_.cloud_id());
    ids.push_back(map_.mobile_id());
    std::sort(ids.begin(), ids.end());
    std::vector<decision::Candidate> out;
    out.reserve(ids.size());
    for (int id : ids) {
      const infra::Node& node = map_.node(id);
      decision::Candidate c;
      c.node_id = id;
      c.tier = infra::tier_of(node.spec.cls);
      c.cpu_budget_mi = c.tier == infra::Tier::Mobile
                            ? std::numeric_limits<double>::infinity()
                            : node.spec.mips() * cfg_.cpu_budget_s;
      c.mem_gb = node.spec.ram_gb;
      c.stor_gb = node.spec.storage_gb;
      out.push_back(c);
    }
    return out;
  }

  double local_response_ms(const workload::TaskSpec& task) {
    const infra::Node& mobile = map_.node(map_.mobile_id());
    const CellBg& bg = bg_at(epoch_of(now_));
    perf::LoadSnapshot load;
    load.exec_load = exec_for(bg.nodes[mobile.id], mobile.spec);
    const auto rt = perf::response_time(task, mobile.spec,
                                        channels_for(infra::NodeClass::ED, bg),
                                        load);
    if (!rt) throw std::logic_error("on-device execution cannot saturate");
    return rt->rt_ms;
  }

  void predict(int task_index, std::vector<decision::Candidate>& cs) {
    const workload::TaskSpec& task = app_->tasks[task_index];
    const CellBg& bg = bg_at(epoch_of(now_));
    cache_.clear();
    cache_task_ = task_index;
    push_event(now_, EventKind::DECISION, app_index_, task_index, -1);
    drain_to(now_);
    for (auto& c : cs) {
      const infra::Node& node = map_.node(c.node_id);
      const NodeBg& nb = bg.nodes[node.id];
      perf::LoadSnapshot load;
      load.exec_load = exec_for(nb, node.spec);
      // On-device execution never touches a channel; reuse the edge pair as a
      // placeholder so the breakdown call has something well-formed.
      perf::ChannelPair pair = c.tier == infra::Tier::Mobile
                                   ? channels_for(infra::NodeClass::ED, bg)
                                   : channels_for(node.spec.cls, bg);
      if (c.tier != infra::Tier::Mobile) {
        load.offload_flows = flow_for(pair.offload,
                                      bg.classes.at(node.spec.cls).up_wait_ms,
                                      bg.lambda);
        load.deliver_flows = flow_for(pair.deliver,
                                      bg.classes.at(node.spec.cls).down_wait_ms,
                                      bg.lambda);
      }
      const auto breakdown = perf::response_time(task, node.spec, pair, load);
      if (!breakdown) {
        c.predicted.reset();
        continue;
      }
      perf::EnergyState probe = energy_; // predict without charging
      const double energy_j =
          perf::energy_and_battery(probe,
                                   c.tier == infra::Tier::Mobile
                                       ? perf::Placement::Local
                                       : perf::Placement::Remote,
                                   *breakdown, pair, mobile_cores())
              .first;
      const double price =
          perf::utilization_cost(c.tier, task, breakdown->t_exec_ms, cost_);
      const auto queue_wait = perf::exec_waiting(node.spec, load.exec_load);
      c.predicted = decision::Prediction{breakdown->rt_ms, energy_j, price,
                                         queue_wait ? *queue_wait : 0.0,
                                         *breakdown};
      cache_[c.node_id] = {*c.predicted, pair};
    }
  }

  decision::OffloadOutcome execute(int task_index, int node_id) {
    const workload::TaskSpec& task = app_->tasks[task_index];
    const auto cached = cache_.find(node_id);
    if (cache_task_ != task_index || cached == cache_.end()) {
      // Only the device itself may run without a prior prediction.
      if (node_id != map_.mobile_id()) {
        throw std::logic_error("executor invoked without a prediction");
      }
      const double rt = local_response_ms(task);
      const auto breakdown = perf::make_breakdown(0.0, rt, 0.0);
      perf::energy_and_battery(energy_, perf::Placement::Local, breakdown,
                               channels_for(infra::NodeClass::ED,
                                            bg_at(epoch_of(now_))),
                               mobile_cores());
      push_event(now_ + rt, EventKind::EXEC_DONE, app_index_, task_index,
                 node_id);
      advance(rt);
      return {true, rt};
    }

    const infra::Node& node = map_.node(node_id);
    const CachedPrediction& cp = cached->second;
    const CellBg& bg = bg_at(epoch_of(now_));
    if (bg.nodes[node_id].overloaded) ++result_.saturated_selected;

    const AttemptOutcome outcome =
        attempt_offload(node, cp.prediction, now_, span_);
    const auto& lat = cp.prediction.latency;
    if (!outcome.success) {
      perf::charge_failed_attempt(energy_, lat.t_offload_ms,
                                  cp.channels.offload);
      push_event(now_ + lat.t_offload_ms, EventKind::FAILURE, app_index_,
                 task_index, node_id);
      advance(outcome.elapsed_ms);
      return {false, outcome.elapsed_ms};
    }

    if (infra::tier_of(node.spec.cls) == infra::Tier::Mobile) {
      perf::energy_and_battery(energy_, perf::Placement::Local, lat,
                               cp.channels, mobile_cores());
      push_event(now_ + lat.rt_ms, EventKind::EXEC_DONE, app_index_, task_index,
                 node_id);
    } else {
      perf::energy_and_battery(energy_, perf::Placement::Remote, lat,
                               cp.channels, mobile_cores());
      push_event(now_ + lat.t_offload_ms, EventKind::OFFLOAD_DONE, app_index_,
                 task_index, node_id);
      push_event(now_ + lat.t_offload_ms + lat.t_exec_ms, EventKind::EXEC_DONE,
                 app_index_, task_index, node_id);
      push_event(now_ + lat.rt_ms, EventKind::DELIVER_DONE, app_index_,
                 task_index, node_id);
    }
    app_cost_ += cp.prediction.price;
    advance(outcome.elapsed_ms);
    return {true, outcome.elapsed_ms};
  }

  void advance(double elapsed_ms) {
    now_ += elapsed_ms;
    drain_to(now_);
  }

  int mobile_cores() const { return map_.node(map_.mobile_id()).spec.cores; }

  workload::AppDag make_app(std::mt19937_64& rng) const {
    switch (cfg_.app_selection) {
      case AppSelection::INTRASAFED:
        return workload::instantiate_app(workload::AppName::INTRASAFED, rng);
      case AppSelection::MOBIAR:
        return workload::instantiate_app(workload::AppName::MOBIAR, rng);
      case AppSelection::NAVIAR:
        return workload::instantiate_app(workload::AppName::NAVIAR, rng);
      case AppSelection::RANDOM:
        return workload::sample_random_app(cfg_.profile, rng);
    }
    throw std::invalid_argument("unknown app selection");
  }

  void run_app(int app_index) {
    std::mt19937_64 app_rng(
        mix(seed_, kAppStream + static_cast<std::uint64_t>(app_index)));
    const workload::AppDag app = make_app(app_rng);
    app_ = &app;
    app_index_ = app_index;
    app_cost_ = 0.0;

    // Periodic arrivals: the device idles until the next request unless the
    // previous application overran its slot.
    const double due = app_index * (span_ / cfg_.apps_per_episode);
    if (due > now_) now_ = due;
    push_event(now_, EventKind::ARRIVAL, app_index, -1, -1);
    drain_to(now_);

    const int cell = advance_mobility(now_, span_, cells_);
    if (cfg_.ambient_rep) ambient_round(bg_at(epoch_of(now_)));

    // Snapshot after the ambient round so the app is billed only for its own
    // ledger traffic.
    const std::int64_t gas_before = ledger_.gas_used();

    decision::ConstraintSet base;
    for (const auto& [tier, constraint] : app.constraints) {
      base.nabla_ms[tier] = constraint.nabla_ms();
    }
    base.deadline_ms = app.deadline_ms;
    base.price_cap = cfg_.price_cap;

    decision::EngineParams params;
    params.weights = cfg_.weights;
    params.top_k = cfg_.top_k;
    params.measure_decision_time = cfg_.measure_decision_time;

    decision::OffloadHooks hooks;
    hooks.predict = [this](int t, std::vector<decision::Candidate>& cs) {
      predict(t, cs);
    };
    hooks.execute = [this](int t, int node) { return execute(t, node); };
    hooks.battery_remaining_j = [this] {
      return energy_.bcap_j - energy_.consumed_j;
    };
    hooks.read_reputations = [this](const std::vector<decision::Candidate>& cs) {
      decision::RepMap reps;
      for (const auto& c : cs) {
        reps[c.node_id] = ledger_.get_reputation_score(c.node_id, now_);
      }
      return reps;
    };

    const auto result =
        decision::fresco_offload(app, engine_, params, base, map_.mobile_id(),
                                 make_candidates(cell), hooks);

    if (!result.transactions.empty()) {
      ledger_.update_node_reputation(
          result.transactions,
          [this, &app](int node_id) {
            const auto tier = infra::tier_of(map_.node(node_id).spec.cls);
            return app.constraint(tier).nabla_ms();
          },
          now_);
      push_event(now_ + ledger_.config().consensus_delay_ms,
                 EventKind::LEDGER_COMMIT, app_index, -1, -1);
    }

    MetricsRecord m;
    m.run = run_;
    m.app = app_index;
    m.engine = engine_;
    m.rt_ms = result.app_elapsed_ms;
    m.battery_pct = 100.0 * energy_.battery_fraction();
    m.cost = app_cost_;
    m.violated = record_violation(app, result.app_elapsed_ms);
    m.failures = result.failures;
    m.gas_wei = ledger_.gas_used() - gas_before;
    m.deadline_ms = app.deadline_ms;
    m.task_tiers.assign(app.tasks.size(), infra::Tier::Mobile);

    double wall_sum = 0.0;
    int wall_count = 0;
    for (const auto& d : result.decisions) {
      const infra::Tier tier = d.chosen_node >= 0
                                   ? infra::tier_of(
                                         map_.node(d.chosen_node).spec.cls)
                                   : infra::Tier::Mobile;
      m.task_tiers[d.task_index] = tier;
      if (!d.forced_local && d.chosen_node >= 0) {
        wall_sum += d.decision_wall_ms;
        ++wall_count;
      }
      PlacementRecord p;
      p.run = run_;
      p.app = app_index;
      p.task = d.task_index;
      p.node = d.chosen_node;
      p.tier = tier;
      p.offloadable = app.tasks[d.task_index].offloadable;
      p.fallback = d.fallback_local;
      p.rt_ms = d.measured_rt_ms;
      p.attempts = d.attempts;
      result_.placements.push_back(p);
    }
    m.decision_ms = wall_count > 0 ? wall_sum / wall_count : 0.0;
    result_.metrics.push_back(std::move(m));
    app_ = nullptr;
  }

  SimConfig cfg_;
  const infra::InfrastructureMap& map_;
  decision::EngineKind engine_;
  ledger::HscLedger& ledger_;
  int run_ = 0;
  std::uint64_t seed_ = 0;
  double span_ = 0.0;
  int cells_ = 1;
  double dwell_ = 0.0;

  double now_ = 0.0;
  const workload::AppDag* app_ = nullptr;
  int app_index_ = -1;
  double app_cost_ = 0.0;
  perf::EnergyState energy_;
  perf::CostSchedule cost_;
  std::map<int, CellBg> bg_cache_;
  std::map<int, CachedPrediction> cache_;
  int cache_task_ = -1;

  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  std::uint64_t next_seq_ = 0;
  RunResult result_;
};

} // namespace

RunResult run_episode(const SimConfig& config,
                      const infra::InfrastructureMap& map,
                      decision::EngineKind engine, ledger::HscLedger& ledger,
                      int run_index) {
  Episode episode(config, map, engine, ledger, run_index);
  return episode.run();
}

ledger::HscLedger make_ledger(const SimConfig& config,
                              const infra::InfrastructureMap& map) {
  ledger::HscLedger::Config lc;
  lc.consensus_delay_ms = config.consensus_delay_ms;
  lc.initial_raw = config.initial_rep_raw;
  ledger::HscLedger ledger(lc);
  for (const auto& node : map.nodes) ledger.register_node(node.id);
  return ledger;
}

std::vector<RunResult> run_simulation(const SimConfig& config,
                                      const infra::InfrastructureMap& map) {
  config.validate();
  std::vector<RunResult> out;
  out.reserve(config.runs);
  for (int r = 0; r < config.runs; ++r) {
    ledger::HscLedger ledger = make_ledger(config, map);
    out.push_back(run_episode(config, map, config.engine, ledger, r));
  }
  return out;
}

} // namespace fresco::sim
