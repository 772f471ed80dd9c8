#include "fresco/ledger/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fresco::ledger {

using nlohmann::json;

std::int64_t GasSchedule::update_gas(int batch_size) const {
  if (batch_size < 1) throw std::domain_error("update batch must be non-empty");
  const std::int64_t raw =
      std::llround(update_base + update_slope * (batch_size - 1));
  return std::clamp(raw, update_base, update_max);
}

std::int64_t GasSchedule::reset_gas(int node_count) const {
  if (node_count < 1) throw std::domain_error("reset set must be non-empty");
  const std::int64_t raw =
      std::llround(reset_base + reset_slope * (node_count - 1));
  return std::clamp(raw, reset_base, reset_max);
}

GasSchedule parse_gas_schedule(const std::string& json_text) {
  const json j = json::parse(json_text);
  GasSchedule g;
  g.register_node = j.value("register_node", g.register_node);
  g.unregister_node = j.value("unregister_node", g.unregister_node);
  g.get_node_count = j.value("get_node_count", g.get_node_count);
  g.get_node = j.value("get_node", g.get_node);
  g.get_reputation_score = j.value("get_reputation_score", g.get_reputation_score);
  g.update_base = j.value("update_base", g.update_base);
  g.update_slope = j.value("update_slope", g.update_slope);
  g.update_max = j.value("update_max", g.update_max);
  g.reset_base = j.value("reset_base", g.reset_base);
  g.reset_slope = j.value("reset_slope", g.reset_slope);
  g.reset_max = j.value("reset_max", g.reset_max);
  return g;
}

GasSchedule load_gas_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gas schedule: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gas_schedule(ss.str());
}

HscLedger::HscLedger(Config config) : config_(std::move(config)) {
  if (config_.initial_raw < 0 || config_.initial_raw > kRepScale ||
      config_.omega_raw < 0 || config_.omega_raw > kRepScale) {
    throw std::domain_error("ledger fixed-point configuration outside [0, scale]");
  }
  if (config_.consensus_delay_ms < 0.0) {
    throw std::domain_error("consensus delay must be non-negative");
  }
}

void HscLedger::register_node(int node_id) {
  if (nodes_.count(node_id)) {
    throw std::invalid_argument("node already registered: " + std::to_string(node_id));
  }
  nodes_[node_id] = NodeState{config_.initial_raw, next_gen_++};
  gas_ += config_.gas.register_node;
}

void HscLedger::unregister_node(int node_id) {
  const auto it = nodes_.find(node_id);
  if (it == nodes_.end()) {
    throw std::invalid_argument("node not registered: " + std::to_string(node_id));
  }
  nodes_.erase(it);
  gas_ += config_.gas.unregister_node;
}

int HscLedger::get_node_count() {
  gas_ += config_.gas.get_node_count;
  return static_cast<int>(nodes_.size());
}

FixedRep HscLedger::get_node(int node_id) {
  const auto it = nodes_.find(node_id);
  if (it == nodes_.end()) {
    throw std::invalid_argument("node not registered: " + std::to_string(node_id));
  }
  gas_ += config_.gas.get_node;
  return FixedRep{it->second.raw};
}

void HscLedger::reset_reputation(const std::vector<int>& node_ids) {
  if (node_ids.empty()) throw std::domain_error("reset set must be non-empty");
  for (int id : node_ids) {
    if (!nodes_.count(id)) {
      throw std::invalid_argument("node not registered: " + std::to_string(id));
    }
  }
  // A new generation fences out in-flight updates from before the reset.
  for (int id : node_ids) {
    nodes_[id] = NodeState{config_.initial_raw, next_gen_++};
  }
  gas_ += config_.gas.reset_gas(static_cast<int>(node_ids.size()));
}

void HscLedger::advance(double now_ms) {
  if (now_ms < clock_) {
    throw std::domain_error("ledger time moved backwards");
  }
  clock_ = now_ms;
  while (!pending_.empty() && pending_.front().commit_ms <= clock_) {
    for (const auto& rec : pending_.front().records) {
      const auto it = nodes_.find(rec.node_id);
      // Nodes unregistered (or re-registered) since submission are skipped.
      if (it == nodes_.end() || it->second.gen != rec.gen) continue;
      it->second.raw =
          reputation_step(it->second.raw, config_.omega_raw, rec.inc_raw);
    }
    pending_.pop_front();
  }
}

void HscLedger::update_node_reputation(
    const std::vector<TransactionRecord>& transactions,
    const std::function<double(int)>& nabla_of, double now_ms) {
  if (transactions.empty()) throw std::domain_error("update batch must be non-empty");
  advance(now_ms);

  PendingBatch batch;
  batch.commit_ms = now_ms + config_.consensus_delay_ms;
  batch.records.reserve(transactions.size());
  for (const auto& tx : transactions) {
    const auto it = nodes_.find(tx.node_id);
    if (it == nodes_.end()) {
      throw std::invalid_argument("update batch names unregistered node " +
                                  std::to_string(tx.node_id));
    }
    PendingRecord rec;
    rec.node_id = tx.node_id;
    rec.gen = it->second.gen;
    rec.inc_raw = tx.failed ? 0 : incentive_raw(tx.measurement_ms, nabla_of(tx.node_id));
    batch.records.push_back(rec);
  }
  pending_.push_back(std::move(batch));
  gas_ += config_.gas.update_gas(static_cast<int>(transactions.size()));
}

FixedRep HscLedger::get_reputation_score(int node_id, double now_ms) {
  advance(now_ms);
  const auto it = nodes_.find(node_id);
  if (it == nodes_.end()) {
    throw std::invalid_argument("node not registered: " + std::to_string(node_id));
  }
  if (config_.charge_reads) gas_ += config_.gas.get_reputation_score;
  return FixedRep{it->second.raw};
}

std::vector<int> HscLedger::registered_ids() const {
  std::vector<int> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, state] : nodes_) ids.push_back(id);
  return ids;
}

std::string HscLedger::dump() const {
  json j;
  j["clock_ms"] = clock_;
  j["gas_wei"] = gas_;
  j["next_gen"] = next_gen_;
  j["config"] = {{"initial_raw", config_.initial_raw},
                 {"omega_raw", config_.omega_raw},
                 {"consensus_delay_ms", config_.consensus_delay_ms},
                 {"charge_reads", config_.charge_reads},
                 {"gas",
                  {{"register_node", config_.gas.register_node},
                   {"unregister_node", config_.gas.unregister_node},
                   {"get_node_count", config_.gas.get_node_count},
                   {"get_node", config_.gas.get_node},
                   {"get_reputation_score", config_.gas.get_reputation_score},
                   {"update_base", config_.gas.update_base},
                   {"update_slope", config_.gas.update_slope},
                   {"update_max", config_.gas.update_max},
                   {"reset_base", config_.gas.reset_base},
                   {"reset_slope", config_.gas.reset_slope},
                   {"reset_max", config_.gas.reset_max}}}};
  j["nodes"] = json::array();
  for (const auto& [id, state] : nodes_) {
    j["nodes"].push_back(json::array({id, state.raw, state.gen}));
  }
  j["pending"] = json::array();
  for (const auto& batch : pending_) {
    json records = json::array();
    for (const auto& r : batch.records) {
      records.push_back(json::array({r.node_id, r.inc_raw, r.gen}));
    }
    j["pending"].push_back(
        {{"commit_ms", batch.commit_ms}, {"records", std::move(records)}});
  }
  return j.dump(2) + "\n";
}

HscLedger HscLedger::restore(const std::string& text) {
  const json j = json::parse(text);
  Config config;
  const auto& cj = j.at("config");
  config.initial_raw = cj.at("initial_raw").get<std::int64_t>();
  config.omega_raw = cj.at("omega_raw").get<std::int64_t>();
  config.consensus_delay_ms = cj.at("consensus_delay_ms").get<double>();
  config.charge_reads = cj.at("charge_reads").get<bool>();
  const auto& gj = cj.at("gas");
  config.gas.register_node = gj.at("register_node").get<std::int64_t>();
  config.gas.unregister_node = gj.at("unregister_node").get<std::int64_t>();
  config.gas.get_node_count = gj.at("get_node_count").get<std::int64_t>();
  config.gas.get_node = gj.at("get_node").get<std::int64_t>();
  config.gas.get_reputation_score = gj.at("get_reputation_score").get<std::int64_t>();
  config.gas.update_base = gj.at("update_base").get<std::int64_t>();
  config.gas.update_slope = gj.at("update_slope").get<double>();
  config.gas.update_max = gj.at("update_max").get<std::int64_t>();
  config.gas.reset_base = gj.at("reset_base").get<std::int64_t>();
  config.gas.reset_slope = gj.at("reset_slope").get<double>();
  config.gas.reset_max = gj.at("reset_max").get<std::int64_t>();

  HscLedger ledger(config);
  ledger.clock_ = j.at("clock_ms").get<double>();
  ledger.gas_ = j.at("gas_wei").get<std::int64_t>();
  ledger.next_gen_ = j.at("next_gen").get<std::uint64_t>();
  for (const auto& nj : j.at("nodes")) {
    ledger.nodes_[nj.at(0).get<int>()] =
        NodeState{nj.at(1).get<std::int64_t>(), nj.at(2).get<std::uint64_t>()};
  }
  for (const auto& bj : j.at("pending")) {
    PendingBatch batch;
    batch.commit_ms = bj.at("commit_ms").get<double>();
    for (const auto& rj : bj.at("records")) {
      batch.records.push_back(PendingRecord{rj.at(0).get<int>(),
                                            rj.at(1).get<std::int64_t>(),
                                            rj.at(2).get<std::uint64_t>()});
    }
    ledger.pending_.push_back(std::move(batch));
  }
  return ledger;
}

} // namespace fresco::ledger
