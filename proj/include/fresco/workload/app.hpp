#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fresco/infra/infrastructure.hpp"

namespace fresco::workload {

enum class TaskKind { DI, CI, MODERATE };

std::string to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

// Published per-kind sampling ranges: instructions (millions) and
// request/response payloads (KB).
struct KindRanges {
  double mi_lo, mi_hi;
  double in_lo, in_hi;
  double out_lo, out_hi;
};
KindRanges kind_ranges(TaskKind kind);

struct TaskSpec {
  std::string name;
  TaskKind kind = TaskKind::MODERATE;
  double mi = 0.0;
  double data_in_kb = 0.0;
  double data_out_kb = 0.0;
  double ram_gb = 1.0;
  bool offloadable = true;

  void validate() const; // values must sit inside the kind's ranges

  bool operator==(const TaskSpec&) const = default;
};

enum class AppName { INTRASAFED, MOBIAR, NAVIAR };

std::string to_string(AppName name);
AppName app_name_from_string(const std::string& s);

// Per-tier latency budgets: processing and network components in ms. The
// single budget fed to the incentive is their sum (network is zero for
// on-device execution).
struct TierConstraint {
  double proc_ms = 0.0;
  double net_ms = 0.0;

  double nabla_ms() const { return proc_ms + net_ms; }

  bool operator==(const TierConstraint&) const = default;
};

struct AppDag {
  AppName name = AppName::INTRASAFED;
  std::vector<TaskSpec> tasks;
  std::vector<std::pair<int, int>> edges; // (predecessor, successor) indices
  double deadline_ms = 0.0;
  std::map<infra::Tier, TierConstraint> constraints;

  const TierConstraint& constraint(infra::Tier tier) const;
  void validate() const; // edges acyclic, first task has no predecessors

  bool operator==(const AppDag&) const = default;
};

// Tasks whose predecessors are all completed and which are not themselves
// completed.
std::set<int> ready_tasks(const AppDag& dag, const std::set<int>& completed);

} // namespace fresco::workload
