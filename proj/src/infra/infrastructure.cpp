#include "fresco/infra/infrastructure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fresco/units.hpp"

namespace fresco::infra {

using nlohmann::json;

Tier tier_of(NodeClass cls) {
  switch (cls) {
    case NodeClass::ED:
    case NodeClass::EC:
    case NodeClass::ER: return Tier::Edge;
    case NodeClass::CD: return Tier::Cloud;
    case NodeClass::MOBILE: return Tier::Mobile;
  }
  throw std::domain_error("unknown node class");
}

std::string to_string(NodeClass cls) {
  switch (cls) {
    case NodeClass::ED: return "ED";
    case NodeClass::EC: return "EC";
    case NodeClass::ER: return "ER";
    case NodeClass::CD: return "CD";
    case NodeClass::MOBILE: return "MOBILE";
  }
  throw std::domain_error("unknown node class");
}

std::string to_string(Tier tier) {
  switch (tier) {
    case Tier::Edge: return "edge";
    case Tier::Cloud: return "cloud";
    case Tier::Mobile: return "mobile";
  }
  throw std::domain_error("unknown tier");
}

NodeClass node_class_from_string(const std::string& s) {
  if (s == "ED") return NodeClass::ED;
  if (s == "EC") return NodeClass::EC;
  if (s == "ER") return NodeClass::ER;
  if (s == "CD") return NodeClass::CD;
  if (s == "MOBILE") return NodeClass::MOBILE;
  throw std::domain_error("unknown node class: " + s);
}

NodeSpec default_spec(NodeClass cls) {
  switch (cls) {
    case NodeClass::ED: return {cls, 8, 2100.0, 8.0, 300.0};
    case NodeClass::EC: return {cls, 16, 2800.0, 16.0, 150.0};
    case NodeClass::ER: return {cls, 4, 1800.0, 8.0, 150.0};
    case NodeClass::CD: return {cls, 64, 2400.0, 128.0, 1000.0};
    case NodeClass::MOBILE: return {cls, 2, 1800.0, 8.0, 16.0};
  }
  throw std::domain_error("unknown node class");
}

void Channel::validate() const {
  if (!(bw_total > 0.0)) throw std::domain_error("channel bandwidth must be positive");
  if (bw_util < 0.0 || bw_util > bw_total) {
    throw std::domain_error("channel utilization outside [0, bw_total]");
  }
  if (!(n0 > 0.0)) throw std::domain_error("noise density must be positive");
}

Channel calibrate_channel(double net_target_s, double tx_power_w, double snr_ref) {
  if (!(net_target_s > 0.0) || !(tx_power_w > 0.0) || !(snr_ref > 0.0)) {
    throw std::domain_error("channel calibration inputs must be positive");
  }
  // Mean request+response payload of a data-intensive task.
  const double ref_bits = (17.5 + 27.5) * kBitsPerKb;
  const double rate_factor = std::log2(1.0 + snr_ref);
  Channel ch;
  ch.bw_total = ref_bits / (net_target_s * rate_factor);
  ch.bw_util = 0.0;
  ch.p_c = tx_power_w;
  ch.n0 = tx_power_w / (snr_ref * ch.bw_total);
  ch.ch = ch.bw_total * rate_factor;
  ch.validate();
  return ch;
}

const Node& InfrastructureMap::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || nodes[id].id != id) {
    throw std::domain_error("unknown node id: " + std::to_string(id));
  }
  return nodes[id];
}

int InfrastructureMap::cloud_id() const {
  for (const auto& n : nodes) {
    if (n.spec.cls == NodeClass::CD) return n.id;
  }
  throw std::runtime_error("infrastructure has no datacenter node");
}

int InfrastructureMap::mobile_id() const {
  for (const auto& n : nodes) {
    if (n.spec.cls == NodeClass::MOBILE) return n.id;
  }
  throw std::runtime_error("infrastructure has no mobile node");
}

InfrastructureMap build_infrastructure(const std::vector<GeoPoint>& sites,
                                       int k, std::uint64_t seed,
                                       const InfraConfig& config) {
  InfrastructureMap map;
  map.cells = cluster_cells(sites, k, seed);

  static constexpr NodeClass kEdgeClasses[] = {NodeClass::ED, NodeClass::EC,
                                               NodeClass::ER};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<NodeClass> class_of(sites.size(), NodeClass::ED);
  for (auto& cell : map.cells) {
    if (cell.members.size() < std::size(kEdgeClasses)) {
      throw std::runtime_error(
          "cell " + std::to_string(cell.id) + " has only " +
          std::to_string(cell.members.size()) +
          " sites; each cell needs one site per edge class (3)");
    }
    // Guarantee one of each edge class, then draw the rest uniformly.
    std::vector<int> order = cell.members;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> pick(0, std::size(kEdgeClasses) - 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      class_of[order[i]] = i < std::size(kEdgeClasses)
                               ? kEdgeClasses[i]
                               : kEdgeClasses[pick(rng)];
    }
  }

  map.nodes.reserve(sites.size() + 2);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Node n;
    n.id = static_cast<int>(i);
    n.spec = default_spec(class_of[i]);
    n.lat = sites[i].first;
    n.lon = sites[i].second;
    for (const auto& cell : map.cells) {
      if (std::find(cell.members.begin(), cell.members.end(), n.id) !=
          cell.members.end()) {
        n.cell = cell.id;
        break;
      }
    }
    map.nodes.push_back(std::move(n));
  }

  Node cloud;
  cloud.id = static_cast<int>(sites.size());
  cloud.spec = default_spec(NodeClass::CD);
  double lat_sum = 0.0, lon_sum = 0.0;
  for (const auto& cell : map.cells) { lat_sum += cell.lat; lon_sum += cell.lon; }
  cloud.lat = lat_sum / map.cells.size();
  cloud.lon = lon_sum / map.cells.size();
  cloud.cell = -1; // shared by every cell via cloud_id
  map.nodes.push_back(std::move(cloud));
  for (auto& cell : map.cells) cell.cloud_id = static_cast<int>(sites.size());

  Node mobile;
  mobile.id = static_cast<int>(sites.size()) + 1;
  mobile.spec = default_spec(NodeClass::MOBILE);
  mobile.cell = -1;
  map.nodes.push_back(std::move(mobile));

  const Channel edge = calibrate_channel(config.edge_net_target_s,
                                         config.edge_tx_w, config.snr_ref);
  const Channel cloud_ch = calibrate_channel(config.cloud_net_target_s,
                                             config.cloud_tx_w, config.snr_ref);
  map.channels[NodeClass::ED] = edge;
  map.channels[NodeClass::EC] = edge;
  map.channels[NodeClass::ER] = edge;
  map.channels[NodeClass::CD] = cloud_ch;
  return map;
}

void attach_availability(InfrastructureMap& map,
                         const std::vector<AvailabilityTrace>& traces,
                         std::uint64_t seed) {
  std::size_t non_mobile = 0;
  for (const auto& n : map.nodes) {
    if (n.spec.cls != NodeClass::MOBILE) ++non_mobile;
  }
  if (traces.size() < non_mobile) {
    throw std::runtime_error("need at least " + std::to_string(non_mobile) +
                             " availability traces, got " +
                             std::to_string(traces.size()));
  }
  std::vector<std::size_t> perm(traces.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::size_t next = 0;
  for (auto& n : map.nodes) {
    n.availability = n.spec.cls == NodeClass::MOBILE
                         ? AvailabilityTrace::always_on()
                         : traces[perm[next++]];
  }
}

bool is_available(const Node& node, double t) {
  return node.availability.is_available(t);
}

namespace {

json channel_to_json(const Channel& ch) {
  return json{{"bw_total", ch.bw_total}, {"bw_util", ch.bw_util},
              {"p_c", ch.p_c},           {"n0", ch.n0},
              {"ch", ch.ch}};
}

Channel channel_from_json(const json& j) {
  Channel ch;
  ch.bw_total = j.at("bw_total").get<double>();
  ch.bw_util = j.at("bw_util").get<double>();
  ch.p_c = j.at("p_c").get<double>();
  ch.n0 = j.at("n0").get<double>();
  ch.ch = j.at("ch").get<double>();
  ch.validate();
  return ch;
}

} // namespace

std::string save_infrastructure(const InfrastructureMap& map) {
  json j;
  j["nodes"] = json::array();
  for (const auto& n : map.nodes) {
    json intervals = json::array();
    for (const auto& [s, e] : n.availability.intervals()) {
      intervals.push_back(json::array({s, e}));
    }
    j["nodes"].push_back({{"id", n.id},
                          {"class", to_string(n.spec.cls)},
                          {"cores", n.spec.cores},
                          {"clock_mhz", n.spec.clock_mhz},
                          {"ram_gb", n.spec.ram_gb},
                          {"storage_gb", n.spec.storage_gb},
                          {"lat", n.lat},
                          {"lon", n.lon},
                          {"cell", n.cell},
                          {"availability", std::move(intervals)}});
  }
  j["cells"] = json::array();
  for (const auto& c : map.cells) {
    j["cells"].push_back({{"id", c.id},
                          {"lat", c.lat},
                          {"lon", c.lon},
                          {"members", c.members},
                          {"cloud_id", c.cloud_id}});
  }
  j["channels"] = json::object();
  for (const auto& [cls, ch] : map.channels) {
    j["channels"][to_string(cls)] = channel_to_json(ch);
  }
  return j.dump(2) + "\n";
}

InfrastructureMap parse_infrastructure(const std::string& text) {
  const json j = json::parse(text);
  InfrastructureMap map;
  for (const auto& nj : j.at("nodes")) {
    Node n;
    n.id = nj.at("id").get<int>();
    n.spec.cls = node_class_from_string(nj.at("class").get<std::string>());
    n.spec.cores = nj.at("cores").get<int>();
    n.spec.clock_mhz = nj.at("clock_mhz").get<double>();
    n.spec.ram_gb = nj.at("ram_gb").get<double>();
    n.spec.storage_gb = nj.at("storage_gb").get<double>();
    n.lat = nj.at("lat").get<double>();
    n.lon = nj.at("lon").get<double>();
    n.cell = nj.at("cell").get<int>();
    std::vector<AvailabilityTrace::Interval> intervals;
    for (const auto& iv : nj.at("availability")) {
      intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
    }
    n.availability = AvailabilityTrace(std::move(intervals));
    map.nodes.push_back(std::move(n));
  }
  for (const auto& cj : j.at("cells")) {
    CellCluster c;
    c.id = cj.at("id").get<int>();
    c.lat = cj.at("lat").get<double>();
    c.lon = cj.at("lon").get<double>();
    c.members = cj.at("members").get<std::vector<int>>();
    c.cloud_id = cj.at("cloud_id").get<int>();
    map.cells.push_back(std::move(c));
  }
  for (const auto& [key, cj] : j.at("channels").items()) {
    map.channels[node_class_from_string(key)] = channel_from_json(cj);
  }
  return map;
}

void save_infrastructure_file(const InfrastructureMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write infrastructure file: " + path);
  out << save_infrastructure(map);
}

InfrastructureMap load_infrastructure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open infrastructure file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_infrastructure(ss.str());
}

} // namespace fresco::infra
