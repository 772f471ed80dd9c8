#include "fresco/infra/kmeans.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fresco::infra {

namespace {

double sq_dist(const GeoPoint& a, const GeoPoint& b) {
  const double dy = a.first - b.first;
  const double dx = a.second - b.second;
  return dy * dy + dx * dx;
}

// Weighted index pick via cumulative scan; deterministic for a given rng.
std::size_t pick_weighted(const std::vector<double>& w, std::mt19937_64& rng) {
  double total = 0.0;
  for (double v : w) total += v;
  if (total <= 0.0) {
    return std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng);
  }
  const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (r < acc) return i;
  }
  return w.size() - 1;
}

std::vector<GeoPoint> seed_centroids(const std::vector<GeoPoint>& sites, int k,
                                     std::mt19937_64& rng) {
  std::vector<GeoPoint> centroids;
  centroids.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, sites.size() - 1);
  centroids.push_back(sites[first(rng)]);
  std::vector<double> d2(sites.size(), 0.0);
  while (static_cast<int>(centroids.size()) < k) {
    for (std::size_t i = 0; i < sites.size(); ++i) {
      double best = std::numeric_limits<double>::max();
      for (const auto& c : centroids) best = std::min(best, sq_dist(sites[i], c));
      d2[i] = best;
    }
    centroids.push_back(sites[pick_weighted(d2, rng)]);
  }
  return centroids;
}

} // namespace

std::vector<CellCluster> cluster_cells(const std::vector<GeoPoint>& sites,
                                       int k, std::uint64_t seed) {
  if (k < 1) throw std::runtime_error("cluster count must be >= 1");
  if (static_cast<std::size_t>(k) > sites.size()) {
    throw std::runtime_error("cluster count exceeds number of cell sites");
  }

  std::mt19937_64 rng(seed);
  auto centroids = seed_centroids(sites, k, rng);
  std::vector<int> assign(sites.size(), -1);

  constexpr int kMaxIter = 300;
  constexpr double kTol = 1e-6;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // Assignment step; ties go to the lowest centroid index.
    for (std::size_t i = 0; i < sites.size(); ++i) {
      double best = std::numeric_limits<double>::max();
      int best_c = 0;
      for (int c = 0; c < k; ++c) {
        const double d = sq_dist(sites[i], centroids[c]);
        if (d < best) { best = d; best_c = c; }
      }
      assign[i] = best_c;
    }

    // Update step.
    std::vector<double> sum_lat(k, 0.0), sum_lon(k, 0.0);
    std::vector<int> count(k, 0);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      sum_lat[assign[i]] += sites[i].first;
      sum_lon[assign[i]] += sites[i].second;
      ++count[assign[i]];
    }

    // An emptied cluster grabs the point farthest from its old centroid.
    for (int c = 0; c < k; ++c) {
      if (count[c] != 0) continue;
      double worst = -1.0;
      std::size_t worst_i = 0;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        if (count[assign[i]] <= 1) continue; // don't empty another cluster
        const double d = sq_dist(sites[i], centroids[c]);
        if (d > worst) { worst = d; worst_i = i; }
      }
      const int old = assign[worst_i];
      sum_lat[old] -= sites[worst_i].first;
      sum_lon[old] -= sites[worst_i].second;
      --count[old];
      assign[worst_i] = c;
      sum_lat[c] = sites[worst_i].first;
      sum_lon[c] = sites[worst_i].second;
      count[c] = 1;
    }

    double movement = 0.0;
    for (int c = 0; c < k; ++c) {
      const GeoPoint next{sum_lat[c] / count[c], sum_lon[c] / count[c]};
      movement = std::max(movement, std::sqrt(sq_dist(next, centroids[c])));
      centroids[c] = next;
    }
    if (movement < kTol) break;
  }

  std::vector<CellCluster> cells(k);
  for (int c = 0; c < k; ++c) {
    cells[c].id = c;
    cells[c].lat = centroids[c].first;
    cells[c].lon = centroids[c].second;
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    cells[assign[i]].members.push_back(static_cast<int>(i));
  }
  return cells;
}

} // namespace fresco::infra
