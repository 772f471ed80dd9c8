#include "fresco/perf/queueing.hpp"

#include <cmath>
#include <stdexcept>

#include "fresco/units.hpp"

namespace fresco::perf {

LatencyBreakdown make_breakdown(double t_offload_ms, double t_exec_ms,
                                double t_deliver_ms) {
  if (t_offload_ms < 0.0 || t_exec_ms < 0.0 || t_deliver_ms < 0.0) {
    throw std::domain_error("latency components must be non-negative");
  }
  LatencyBreakdown b;
  b.t_offload_ms = t_offload_ms;
  b.t_exec_ms = t_exec_ms;
  b.t_deliver_ms = t_deliver_ms;
  b.rt_ms = t_offload_ms + t_exec_ms + t_deliver_ms;
  return b;
}

double comm_utilization(const infra::Channel& channel,
                        const std::vector<FlowGen>& generators) {
  double offered = 0.0;
  for (const auto& g : generators) offered += g.rate_per_s * g.data_bits;
  return offered / channel.bw_total;
}

std::optional<double> comm_waiting(const infra::Channel& channel,
                                   const std::vector<FlowGen>& generators) {
  if (channel.bw_util >= channel.bw_total) return std::nullopt;
  double offered = 0.0;
  for (const auto& g : generators) offered += g.rate_per_s * g.data_bits;
  return s_to_ms(offered / (channel.bw_total - channel.bw_util));
}

std::optional<double> comm_service(const infra::Channel& channel,
                                   double data_bits) {
  const double bw = channel.bw_avail();
  if (bw <= 0.0) return std::nullopt;
  const double snr = channel.p_c / (channel.n0 * bw);
  const double rate = bw * std::log2(1.0 + snr);
  return s_to_ms(data_bits / rate);
}

std::optional<double> comm_latency(const infra::Channel& channel,
                                   double data_bits,
                                   const std::vector<FlowGen>& generators) {
  const auto mu = comm_service(channel, data_bits);
  const auto w = comm_waiting(channel, generators);
  if (!mu || !w) return std::nullopt;
  return *mu + *w;
}

double exec_utilization(const infra::NodeSpec& node,
                        const std::vector<ExecGen>& assigned) {
  double offered = 0.0;
  for (const auto& g : assigned) offered += g.rate_per_s * g.mi;
  return offered / node.mips();
}

std::optional<double> exec_waiting(const infra::NodeSpec& node,
                                   const std::vector<ExecGen>& assigned) {
  const double u = exec_utilization(node, assigned);
  if (u >= 1.0) return std::nullopt;
  double offered = 0.0;
  for (const auto& g : assigned) offered += g.rate_per_s * g.mi;
  return s_to_ms(offered / (1.0 - u));
}

double exec_service(const infra::NodeSpec& node, double mi) {
  return s_to_ms(mi / node.mips());
}

std::optional<LatencyBreakdown> response_time(const workload::TaskSpec& task,
                                              const infra::NodeSpec& node,
                                              const ChannelPair& channels,
                                              const LoadSnapshot& load) {
  const auto exec_w = exec_waiting(node, load.exec_load);
  if (!exec_w) return std::nullopt;
  const double t_exec = exec_service(node, task.mi) + *exec_w;

  if (node.cls == infra::NodeClass::MOBILE) {
    return make_breakdown(0.0, t_exec, 0.0);
  }

  if (comm_utilization(channels.offload, load.offload_flows) >= 1.0 ||
      comm_utilization(channels.deliver, load.deliver_flows) >= 1.0) {
    return std::nullopt;
  }
  const auto t_off = comm_latency(channels.offload, kb_to_bits(task.data_in_kb),
                                  load.offload_flows);
  const auto t_del = comm_latency(channels.deliver, kb_to_bits(task.data_out_kb),
                                  load.deliver_flows);
  if (!t_off || !t_del) return std::nullopt;
  return make_breakdown(*t_off, t_exec, *t_del);
}

} // namespace fresco::perf
