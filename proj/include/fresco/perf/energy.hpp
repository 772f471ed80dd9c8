#pragma once

#include <utility>

#include "fresco/perf/queueing.hpp"

namespace fresco::perf {

struct EnergyState {
  double bcap_j = 1000.0;  // initial battery capacity
  double consumed_j = 0.0; // accumulated drain
  double beta_base = 625.25e-3;
  double beta_u = 6.9305e-3;
  double p_cores_coeff = 0.073e-3;
  double t_idle_s = 0.0;
  int c_transitions = 1;
  bool inclusive_core_sum = true; // cores+1 utilization terms when set

  double b_cores(int cores) const { return p_cores_coeff * cores; }
  double battery_fraction() const { return (bcap_j - consumed_j) / bcap_j; }
  void validate() const;
};

// Multicore handset power draw at the given per-core utilization, plus the
// idle-residency term carried by the state.
double exec_power(const EnergyState& device, int cores, double u_per_core);

// Power needed to hold the channel's reference capacity over the bandwidth
// actually left available.
double tx_power(const infra::Channel& channel);

enum class Placement { Local, Remote };

// Charges the device for one completed task and returns (joules charged,
// battery fraction after). Local runs pay active execution power over the
// execution window; remote runs pay transmission power over both transfer
// windows plus idle-state power while the server computes.
std::pair<double, double> energy_and_battery(EnergyState& device,
                                             Placement placement,
                                             const LatencyBreakdown& latency,
                                             const ChannelPair& channels,
                                             int cores);

// A failed attempt still paid for the request transfer before the fault
// surfaced.
std::pair<double, double> charge_failed_attempt(EnergyState& device,
                                                double t_offload_ms,
                                                const infra::Channel& offload);

} // namespace fresco::perf
