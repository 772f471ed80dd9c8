#include "fresco/workload/app.hpp"

#include <stdexcept>

namespace fresco::workload {

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::DI: return "DI";
    case TaskKind::CI: return "CI";
    case TaskKind::MODERATE: return "MODERATE";
  }
  throw std::domain_error("unknown task kind");
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "DI") return TaskKind::DI;
  if (s == "CI") return TaskKind::CI;
  if (s == "MODERATE") return TaskKind::MODERATE;
  throw std::domain_error("unknown task kind: " + s);
}

KindRanges kind_ranges(TaskKind kind) {
  switch (kind) {
    case TaskKind::DI: return {100.0, 200.0, 15.0, 20.0, 25.0, 30.0};
    case TaskKind::CI: return {550.0, 650.0, 4.0, 8.0, 4.0, 8.0};
    case TaskKind::MODERATE: return {100.0, 200.0, 4.0, 8.0, 4.0, 8.0};
  }
  throw std::domain_error("unknown task kind");
}

void TaskSpec::validate() const {
  const auto r = kind_ranges(kind);
  const bool ok = mi >= r.mi_lo && mi <= r.mi_hi && data_in_kb >= r.in_lo &&
                  data_in_kb <= r.in_hi && data_out_kb >= r.out_lo &&
                  data_out_kb <= r.out_hi && ram_gb > 0.0;
  if (!ok) {
    throw std::domain_error("task '" + name + "' outside its " +
                            to_string(kind) + " specification ranges");
  }
}

std::string to_string(AppName name) {
  switch (name) {
    case AppName::INTRASAFED: return "INTRASAFED";
    case AppName::MOBIAR: return "MOBIAR";
    case AppName::NAVIAR: return "NAVIAR";
  }
  throw std::domain_error("unknown application");
}

AppName app_name_from_string(const std::string& s) {
  if (s == "INTRASAFED") return AppName::INTRASAFED;
  if (s == "MOBIAR") return AppName::MOBIAR;
  if (s == "NAVIAR") return AppName::NAVIAR;
  throw std::domain_error("unknown application: " + s);
}

const TierConstraint& AppDag::constraint(infra::Tier tier) const {
  const auto it = constraints.find(tier);
  if (it == constraints.end()) {
    throw std::domain_error("application lacks a constraint for tier " +
                            infra::to_string(tier));
  }
  return it->second;
}

void AppDag::validate() const {
  if (tasks.empty()) throw std::domain_error("application has no tasks");
  const int n = static_cast<int>(tasks.size());
  std::vector<int> in_degree(n, 0);
  for (const auto& [from, to] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n || from == to) {
      throw std::domain_error("edge references an unknown task");
    }
    ++in_degree[to];
  }
  if (in_degree[0] != 0) {
    throw std::domain_error("first task must have no predecessors");
  }
  // Kahn's algorithm; leftovers mean a cycle.
  std::vector<int> degree = in_degree;
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    if (degree[i] == 0) queue.push_back(i);
  }
  int visited = 0;
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    ++visited;
    for (const auto& [from, to] : edges) {
      if (from == u && --degree[to] == 0) queue.push_back(to);
    }
  }
  if (visited != n) throw std::domain_error("task dependencies contain a cycle");
  for (const auto& t : tasks) t.validate();
  if (!(deadline_ms > 0.0)) throw std::domain_error("deadline must be positive");
}

std::set<int> ready_tasks(const AppDag& dag, const std::set<int>& completed) {
  const int n = static_cast<int>(dag.tasks.size());
  for (int c : completed) {
    if (c < 0 || c >= n) throw std::domain_error("completed set references an unknown task");
  }
  std::set<int> ready;
  for (int i = 0; i < n; ++i) {
    if (completed.count(i)) continue;
    bool ok = true;
    for (const auto& [from, to] : dag.edges) {
      if (to == i && !completed.count(from)) { ok = false; break; }
    }
    if (ok) ready.insert(i);
  }
  return ready;
}

} // namespace fresco::workload
