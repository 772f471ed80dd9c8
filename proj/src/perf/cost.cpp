#include "fresco/perf/cost.hpp"

#include <stdexcept>

#include "fresco/units.hpp"

namespace fresco::perf {

void CostSchedule::validate() const {
  if (cost_cores < 0.0 || cost_stor < 0.0 || cost_edge_penalty < 0.0) {
    throw std::domain_error("cost coefficients must be non-negative");
  }
}

double utilization_cost(infra::Tier tier, const workload::TaskSpec& task,
                        double t_exec_ms, const CostSchedule& schedule) {
  schedule.validate();
  if (t_exec_ms < 0.0) throw std::domain_error("execution time negative");
  if (tier == infra::Tier::Mobile) return 0.0;
  const double data_kb = task.data_in_kb + task.data_out_kb;
  const double resource_rate =
      schedule.cost_cores * task.mi + schedule.cost_stor * data_kb;
  const double premium = tier == infra::Tier::Edge ? schedule.cost_edge_penalty : 0.0;
  return ms_to_s(t_exec_ms) * (resource_rate + premium);
}

} // namespace fresco::perf
