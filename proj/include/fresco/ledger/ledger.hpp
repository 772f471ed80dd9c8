#pragma once

#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fresco/ledger/fixed_point.hpp"

namespace fresco::ledger {

struct TransactionRecord {
  double measurement_ms = 0.0; // 0 together with `failed` encodes a failure
  int node_id = -1;
  bool failed = false;
};

struct GasSchedule {
  std::int64_t register_node = 21'503;
  std::int64_t unregister_node = 21'204;
  std::int64_t get_node_count = 21'604;
  std::int64_t get_node = 21'204;
  std::int64_t get_reputation_score = 21'204;
  std::int64_t update_base = 21'638;
  double update_slope = 287.8; // per extra transaction in a batch
  std::int64_t update_max = 29'984;
  std::int64_t reset_base = 21'484;
  double reset_slope = 140.0;
  std::int64_t reset_max = 25'544;

  std::int64_t update_gas(int batch_size) const;
  std::int64_t reset_gas(int node_count) const;
};

GasSchedule parse_gas_schedule(const std::string& json_text);
GasSchedule load_gas_schedule(const std::string& path);

// Emulated hybrid smart contract: reputation state and writes go through
// consensus (visible only after the configured delay), reads are served
// from the committed snapshot immediately. The instance is a single
// serialized state machine; callers are expected to order their calls.
class HscLedger {
 public:
  struct Config {
    std::int64_t initial_raw = kRepScale; // optimistic initial reputation 1.0
    std::int64_t omega_raw = 300'000;     // smoothing weight 0.3
    double consensus_delay_ms = 4000.0;
    bool charge_reads = true; // zero-cost read mode when disabled
    GasSchedule gas;
  };

  HscLedger() : HscLedger(Config{}) {}
  explicit HscLedger(Config config);

  void register_node(int node_id);
  void unregister_node(int node_id);
  int get_node_count();
  FixedRep get_node(int node_id);
  void reset_reputation(const std::vector<int>& node_ids);

  // Scores each record against its node's latency budget and enqueues the
  // batch; it becomes visible at now + consensus_delay. Unknown ids reject
  // the whole batch with no state change.
  void update_node_reputation(const std::vector<TransactionRecord>& transactions,
                              const std::function<double(int)>& nabla_of,
                              double now_ms);

  // Non-blocking read of the last value committed at or before `now`.
  FixedRep get_reputation_score(int node_id, double now_ms);

  std::int64_t gas_used() const { return gas_; }
  double clock_ms() const { return clock_; }
  const Config& config() const { return config_; }
  bool is_registered(int node_id) const { return nodes_.count(node_id) != 0; }
  std::vector<int> registered_ids() const;

  std::string dump() const;
  static HscLedger restore(const std::string& text);

 private:
  struct NodeState {
    std::int64_t raw = 0;
    std::uint64_t gen = 0; // bumps on (re-)registration to fence stale updates
  };
  struct PendingRecord {
    int node_id = -1;
    std::int64_t inc_raw = 0;
    std::uint64_t gen = 0;
  };
  struct PendingBatch {
    double commit_ms = 0.0;
    std::vector<PendingRecord> records;
  };

  void advance(double now_ms); // commit every batch due at or before now

  Config config_;
  std::map<int, NodeState> nodes_;
  std::deque<PendingBatch> pending_;
  std::int64_t gas_ = 0;
  double clock_ = 0.0;
  std::uint64_t next_gen_ = 1;
};

} // namespace fresco::ledger
