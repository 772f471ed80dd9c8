#pragma once

#include <optional>
#include <vector>

#include "fresco/infra/infrastructure.hpp"
#include "fresco/workload/app.hpp"

namespace fresco::perf {

// Competing traffic on a channel: task arrival rate and per-task payload.
struct FlowGen {
  double rate_per_s = 0.0;
  double data_bits = 0.0;
};

// Competing work on a server: task arrival rate and per-task instructions.
struct ExecGen {
  double rate_per_s = 0.0;
  double mi = 0.0;
};

struct LatencyBreakdown {
  double t_offload_ms = 0.0;
  double t_exec_ms = 0.0;
  double t_deliver_ms = 0.0;
  double rt_ms = 0.0; // always the sum of the three components
};

LatencyBreakdown make_breakdown(double t_offload_ms, double t_exec_ms,
                                double t_deliver_ms);

// Uplink/downlink channel states for one candidate placement.
struct ChannelPair {
  infra::Channel offload;
  infra::Channel deliver;
};

// Background context a prediction is evaluated against. Offload flows
// include the requesting device itself; delivery flows carry only the
// remote servers' return traffic.
struct LoadSnapshot {
  std::vector<FlowGen> offload_flows;
  std::vector<FlowGen> deliver_flows;
  std::vector<ExecGen> exec_load;
};

// Fraction of channel capacity claimed by the generators; may exceed 1,
// the stability guard in response_time rejects such candidates.
double comm_utilization(const infra::Channel& channel,
                        const std::vector<FlowGen>& generators);

// Sharing delay in ms; empty when the channel is saturated.
std::optional<double> comm_waiting(const infra::Channel& channel,
                                   const std::vector<FlowGen>& generators);

// Transfer time in ms over the leftover bandwidth at the channel's
// operating signal-to-noise point; empty when no bandwidth remains.
std::optional<double> comm_service(const infra::Channel& channel,
                                   double data_bits);

std::optional<double> comm_latency(const infra::Channel& channel,
                                   double data_bits,
                                   const std::vector<FlowGen>& generators);

double exec_utilization(const infra::NodeSpec& node,
                        const std::vector<ExecGen>& assigned);

// Contention delay in ms; empty at or beyond full utilization.
std::optional<double> exec_waiting(const infra::NodeSpec& node,
                                   const std::vector<ExecGen>& assigned);

double exec_service(const infra::NodeSpec& node, double mi); // ms

// Full three-stage prediction; empty if any stage is unstable. On-device
// execution has zero communication terms.
std::optional<LatencyBreakdown> response_time(const workload::TaskSpec& task,
                                              const infra::NodeSpec& node,
                                              const ChannelPair& channels,
                                              const LoadSnapshot& load);

} // namespace fresco::perf
