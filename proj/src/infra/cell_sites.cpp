#include "fresco/infra/cell_sites.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fresco::infra {

namespace {

bool parse_double(const std::string& field, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(field, &pos);
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    return pos == field.size();
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

std::vector<GeoPoint> parse_cell_sites(std::istream& in) {
  std::vector<GeoPoint> sites;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) { // first populated line is the column header
      header_seen = true;
      continue;
    }
    std::stringstream row(line);
    std::string cell_id, lat_s, lon_s;
    if (!std::getline(row, cell_id, ',') || !std::getline(row, lat_s, ',') ||
        !std::getline(row, lon_s, ',')) {
      throw std::runtime_error("cell-site line " + std::to_string(line_no) +
                               ": expected at least cell_id,lat,lon");
    }
    double lat = 0.0, lon = 0.0;
    if (!parse_double(lat_s, lat) || !parse_double(lon_s, lon)) {
      throw std::runtime_error("cell-site line " + std::to_string(line_no) +
                               ": lat/lon are not decimal degrees");
    }
    if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0) {
      throw std::runtime_error("cell-site line " + std::to_string(line_no) +
                               ": coordinates out of range");
    }
    sites.emplace_back(lat, lon);
  }
  if (sites.empty()) {
    throw std::runtime_error("cell-site file has no data rows");
  }
  return sites;
}

std::vector<GeoPoint> ingest_cell_sites(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cell-site file: " + path);
  return parse_cell_sites(in);
}

} // namespace fresco::infra
