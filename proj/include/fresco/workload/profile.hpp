#pragma once

#include <map>
#include <random>

#include "fresco/workload/catalog.hpp"

namespace fresco::workload {

struct WorkloadProfile {
  double lambda_lo = 10.0; // background arrival-rate interval, tasks/s
  double lambda_hi = 20.0;
  double task_size_mean_kb = 15.0; // exponential payload sampling
  std::map<AppName, double> app_mix; // must sum to 1

  void validate() const;
};

// Catalog workload: published arrival-rate interval and app mix.
WorkloadProfile catalog_profile();

// Heavier mixed workload: elevated arrival rates with the same app mix.
WorkloadProfile random_profile();

// App drawn from the mix, then instantiated with sampled task values.
AppDag sample_random_app(const WorkloadProfile& profile, std::mt19937_64& rng);
AppName sample_app_name(const WorkloadProfile& profile, std::mt19937_64& rng);

struct BackgroundLoad {
  double arrival_rate = 0.0; // tasks/s
  double task_size_kb = 0.0;
};

// One competing-flow draw: rate uniform over the interval, size exponential.
BackgroundLoad sample_background_load(const WorkloadProfile& profile,
                                      std::mt19937_64& rng);

} // namespace fresco::workload
