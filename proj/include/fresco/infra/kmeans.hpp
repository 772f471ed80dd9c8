#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fresco/infra/cell_sites.hpp"

namespace fresco::infra {

struct CellCluster {
  int id = -1;
  double lat = 0.0; // centroid
  double lon = 0.0;
  std::vector<int> members; // site indices after clustering, node ids once built
  int cloud_id = -1;

  bool operator==(const CellCluster&) const = default;
};

// Lloyd's algorithm with k-means++ seeding, Euclidean distance on raw
// degrees, iteration cap 300, centroid-movement tolerance 1e-6.
std::vector<CellCluster> cluster_cells(const std::vector<GeoPoint>& sites,
                                       int k, std::uint64_t seed);

} // namespace fresco::infra
