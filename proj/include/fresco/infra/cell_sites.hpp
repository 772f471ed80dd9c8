#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fresco::infra {

using GeoPoint = std::pair<double, double>; // (lat, lon) decimal degrees

// Reads a header-bearing comma-separated file with columns
// (cell_id, lat, lon); extra columns are ignored.
std::vector<GeoPoint> parse_cell_sites(std::istream& in);
std::vector<GeoPoint> ingest_cell_sites(const std::string& path);

} // namespace fresco::infra
