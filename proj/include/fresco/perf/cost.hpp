#pragma once

#include "fresco/infra/infrastructure.hpp"
#include "fresco/workload/app.hpp"

namespace fresco::perf {

struct CostSchedule {
  double cost_cores = 0.023;        // currency per MI
  double cost_stor = 0.776;         // currency per KB
  double cost_edge_penalty = 10.0;  // currency per second of edge occupancy

  void validate() const;
};

// Monetary charge for occupying a server: free on-device, resource-rate
// priced on the cloud, with a premium on edge capacity. The data footprint
// is the task's request plus response payload.
double utilization_cost(infra::Tier tier, const workload::TaskSpec& task,
                        double t_exec_ms, const CostSchedule& schedule);

} // namespace fresco::perf
