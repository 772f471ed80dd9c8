#include "fresco/perf/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "fresco/units.hpp"

namespace fresco::perf {

void EnergyState::validate() const {
  if (!(bcap_j > 0.0) || !(beta_base > 0.0) || !(beta_u > 0.0) ||
      !(p_cores_coeff > 0.0)) {
    throw std::domain_error("energy coefficients must be positive");
  }
  if (consumed_j < 0.0) throw std::domain_error("consumed energy negative");
  if (c_transitions < 1) throw std::domain_error("transition count must be >= 1");
}

double exec_power(const EnergyState& device, int cores, double u_per_core) {
  if (cores < 1) throw std::domain_error("core count must be >= 1");
  if (u_per_core < 0.0) throw std::domain_error("utilization must be >= 0");
  const int terms = device.inclusive_core_sum ? cores + 1 : cores;
  return device.b_cores(cores) + terms * (device.beta_u * u_per_core) +
         device.beta_base * device.t_idle_s / device.c_transitions;
}

double tx_power(const infra::Channel& channel) {
  if (channel.ch == 0.0) return 0.0;
  const double bw = channel.bw_avail();
  if (bw <= 0.0) throw std::domain_error("no bandwidth available for transmission");
  return channel.n0 * bw * (std::exp2(channel.ch / bw) - 1.0);
}

std::pair<double, double> energy_and_battery(EnergyState& device,
                                             Placement placement,
                                             const LatencyBreakdown& latency,
                                             const ChannelPair& channels,
                                             int cores) {
  double joules = 0.0;
  if (placement == Placement::Local) {
    EnergyState active = device;
    active.t_idle_s = 0.0;
    joules = ms_to_s(latency.t_exec_ms) * exec_power(active, cores, 1.0);
  } else {
    EnergyState idle = device;
    idle.t_idle_s = ms_to_s(latency.t_exec_ms);
    idle.c_transitions = 1;
    joules = ms_to_s(latency.t_offload_ms) * tx_power(channels.offload) +
             ms_to_s(latency.t_deliver_ms) * tx_power(channels.deliver) +
             ms_to_s(latency.t_exec_ms) * exec_power(idle, cores, 0.0);
  }
  device.consumed_j += joules;
  return {joules, device.battery_fraction()};
}

std::pair<double, double> charge_failed_attempt(EnergyState& device,
                                                double t_offload_ms,
                                                const infra::Channel& offload) {
  const double joules = ms_to_s(t_offload_ms) * tx_power(offload);
  device.consumed_j += joules;
  return {joules, device.battery_fraction()};
}

} // namespace fresco::perf
