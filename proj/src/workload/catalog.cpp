#include "fresco/workload/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fresco::workload {

using infra::Tier;
using nlohmann::json;

namespace {

struct TaskRow {
  const char* name;
  TaskKind kind;
  double ram_gb;
  bool offloadable;
};

TaskSpec midpoint_task(const TaskRow& row) {
  const auto r = kind_ranges(row.kind);
  TaskSpec t;
  t.name = row.name;
  t.kind = row.kind;
  t.mi = (r.mi_lo + r.mi_hi) / 2.0;
  t.data_in_kb = (r.in_lo + r.in_hi) / 2.0;
  t.data_out_kb = (r.out_lo + r.out_hi) / 2.0;
  t.ram_gb = row.ram_gb;
  t.offloadable = row.offloadable;
  return t;
}

std::vector<std::pair<int, int>> chain_edges(std::size_t n) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  }
  return edges;
}

AppDag catalog_skeleton(AppName name) {
  AppDag dag;
  dag.name = name;
  switch (name) {
    case AppName::INTRASAFED: {
      static constexpr TaskRow rows[] = {
          {"LOAD_MODEL", TaskKind::MODERATE, 1.0, false},
          {"UPLOAD", TaskKind::DI, 1.0, true},
          {"ANALYZE", TaskKind::CI, 4.0, true},
          {"AGGREGATE", TaskKind::CI, 2.0, true},
          {"SEND_ALERT", TaskKind::MODERATE, 1.0, true},
      };
      for (const auto& r : rows) dag.tasks.push_back(midpoint_task(r));
      dag.deadline_ms = 108.0;
      dag.constraints[Tier::Edge] = {18.0, 15.0};
      dag.constraints[Tier::Cloud] = {11.0, 90.0};
      dag.constraints[Tier::Mobile] = {300.0, 0.0};
      break;
    }
    case AppName::MOBIAR: {
      static constexpr TaskRow rows[] = {
          {"UPLOAD", TaskKind::MODERATE, 1.0, false},
          {"EXTRACT", TaskKind::CI, 2.0, true},
          {"PROCESS", TaskKind::CI, 2.0, true},
          {"DATA", TaskKind::DI, 1.0, true},
          {"DOWNLOAD", TaskKind::DI, 1.0, false},
      };
      for (const auto& r : rows) dag.tasks.push_back(midpoint_task(r));
      dag.deadline_ms = 400.0;
      dag.constraints[Tier::Edge] = {11.0, 15.0};
      dag.constraints[Tier::Cloud] = {1.0, 300.0};
      dag.constraints[Tier::Mobile] = {300.0, 0.0};
      break;
    }
    case AppName::NAVIAR: {
      static constexpr TaskRow rows[] = {
          {"MAP", TaskKind::DI, 1.0, true},
          {"GUI", TaskKind::MODERATE, 1.0, false},
          {"COORDINATION", TaskKind::CI, 4.0, true},
          {"SHORTEST_PATH", TaskKind::CI, 2.0, true},
          {"MOTION_COMMAND", TaskKind::CI, 1.0, true},
          {"VIRTUAL_GUIDANCE", TaskKind::MODERATE, 1.0, false},
          {"RUNTIME_LOCATION", TaskKind::CI, 1.0, true},
          {"DISPLAY", TaskKind::MODERATE, 1.0, false},
      };
      for (const auto& r : rows) dag.tasks.push_back(midpoint_task(r));
      dag.deadline_ms = 800.0;
      dag.constraints[Tier::Edge] = {275.0, 350.0};
      dag.constraints[Tier::Cloud] = {11.0, 1250.0};
      dag.constraints[Tier::Mobile] = {800.0, 0.0};
      break;
    }
  }
  dag.edges = chain_edges(dag.tasks.size());
  return dag;
}

} // namespace

AppDag build_app(AppName name) {
  AppDag dag = catalog_skeleton(name);
  dag.validate();
  return dag;
}

AppDag instantiate_app(AppName name, std::mt19937_64& rng) {
  AppDag dag = catalog_skeleton(name);
  for (auto& t : dag.tasks) {
    const auto r = kind_ranges(t.kind);
    t.mi = std::uniform_real_distribution<double>(r.mi_lo, r.mi_hi)(rng);
    t.data_in_kb = std::uniform_real_distribution<double>(r.in_lo, r.in_hi)(rng);
    t.data_out_kb = std::uniform_real_distribution<double>(r.out_lo, r.out_hi)(rng);
  }
  dag.validate();
  return dag;
}

AppDag parse_app_override(const std::string& json_text) {
  const json j = json::parse(json_text);
  AppDag dag;
  dag.name = app_name_from_string(j.at("name").get<std::string>());
  dag.deadline_ms = j.at("deadline_ms").get<double>();
  for (const auto& tj : j.at("tasks")) {
    TaskSpec t;
    t.name = tj.at("name").get<std::string>();
    t.kind = task_kind_from_string(tj.at("kind").get<std::string>());
    const auto r = kind_ranges(t.kind);
    t.mi = tj.value("mi", (r.mi_lo + r.mi_hi) / 2.0);
    t.data_in_kb = tj.value("data_in_kb", (r.in_lo + r.in_hi) / 2.0);
    t.data_out_kb = tj.value("data_out_kb", (r.out_lo + r.out_hi) / 2.0);
    t.ram_gb = tj.at("ram_gb").get<double>();
    t.offloadable = tj.at("offloadable").get<bool>();
    dag.tasks.push_back(std::move(t));
  }
  if (j.contains("edges")) {
    for (const auto& ej : j.at("edges")) {
      dag.edges.emplace_back(ej.at(0).get<int>(), ej.at(1).get<int>());
    }
  } else {
    dag.edges = chain_edges(dag.tasks.size());
  }
  for (const auto& [tier_name, cj] : j.at("constraints").items()) {
    Tier tier;
    if (tier_name == "edge") tier = Tier::Edge;
    else if (tier_name == "cloud") tier = Tier::Cloud;
    else if (tier_name == "mobile") tier = Tier::Mobile;
    else throw std::domain_error("unknown tier in constraint table: " + tier_name);
    dag.constraints[tier] = {cj.at("proc_ms").get<double>(),
                             cj.at("net_ms").get<double>()};
  }
  dag.validate();
  return dag;
}

AppDag load_app_override(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open application file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_app_override(ss.str());
}

} // namespace fresco::workload
