#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fresco/infra/availability.hpp"
#include "fresco/infra/cell_sites.hpp"
#include "fresco/infra/kmeans.hpp"

namespace fresco::infra {

enum class NodeClass { ED, EC, ER, CD, MOBILE };
enum class Tier { Edge, Cloud, Mobile };

Tier tier_of(NodeClass cls);
std::string to_string(NodeClass cls);
std::string to_string(Tier tier);
NodeClass node_class_from_string(const std::string& s);

struct NodeSpec {
  NodeClass cls = NodeClass::ED;
  int cores = 1;
  double clock_mhz = 1.0;
  double ram_gb = 1.0;
  double storage_gb = 1.0;

  // Aggregate instruction rate used by the service-time model.
  double mips() const { return cores * clock_mhz; }

  bool operator==(const NodeSpec&) const = default;
};

// Built-in hardware catalog (server classes and the handset).
NodeSpec default_spec(NodeClass cls);

struct Node {
  int id = -1;
  NodeSpec spec;
  double lat = 0.0;
  double lon = 0.0;
  AvailabilityTrace availability = AvailabilityTrace::always_on();
  int cell = -1; // -1 for the mobile device (it roams)
};

struct Channel {
  double bw_total = 0.0; // bits/s
  double bw_util = 0.0;  // bits/s currently claimed by other flows
  double p_c = 0.0;      // transmit power, watts
  double n0 = 0.0;       // noise spectral density, watts/Hz
  double ch = 0.0;       // Shannon capacity at reference SNR, bits/s

  double bw_avail() const { return bw_total - bw_util; }
  void validate() const;
};

struct InfraConfig {
  double edge_net_target_s = 0.015;  // unloaded round-trip data time, edge
  double cloud_net_target_s = 0.090; // unloaded round-trip data time, cloud
  double snr_ref = 3.0;
  double edge_tx_w = 0.10;
  double cloud_tx_w = 0.15;
};

// Unloaded-channel constants derived from the round-trip targets above.
// Reference payload is the mean request+response size of a data-intensive
// task (17.5 KB up + 27.5 KB down); at the reference SNR the effective rate
// is bw_total * log2(1 + snr_ref), so bw_total falls out of the target time.
Channel calibrate_channel(double net_target_s, double tx_power_w, double snr_ref);

struct InfrastructureMap {
  std::vector<Node> nodes;
  std::vector<CellCluster> cells;
  std::map<NodeClass, Channel> channels; // keyed by remote node class

  const Node& node(int id) const;
  int cloud_id() const;  // the single datacenter node
  int mobile_id() const; // the handset
};

// Places one server per site (classes drawn per cell, each edge class
// represented at least once per cell), plus one datacenter node shared by
// every cell and the mobile device itself.
InfrastructureMap build_infrastructure(const std::vector<GeoPoint>& sites,
                                       int k, std::uint64_t seed,
                                       const InfraConfig& config = {});

// Bijective node-to-trace assignment, shuffled by seed; the mobile device
// keeps the always-available trace.
void attach_availability(InfrastructureMap& map,
                         const std::vector<AvailabilityTrace>& traces,
                         std::uint64_t seed);

bool is_available(const Node& node, double t);

std::string save_infrastructure(const InfrastructureMap& map);
InfrastructureMap parse_infrastructure(const std::string& text);
void save_infrastructure_file(const InfrastructureMap& map, const std::string& path);
InfrastructureMap load_infrastructure_file(const std::string& path);

} // namespace fresco::infra
