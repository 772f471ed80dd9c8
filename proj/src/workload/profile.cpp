#include "fresco/workload/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace fresco::workload {

void WorkloadProfile::validate() const {
  if (!(lambda_lo > 0.0) || lambda_hi < lambda_lo) {
    throw std::domain_error("arrival-rate interval must be positive and ordered");
  }
  if (!(task_size_mean_kb > 0.0)) {
    throw std::domain_error("task size mean must be positive");
  }
  double total = 0.0;
  for (const auto& [name, p] : app_mix) {
    if (p < 0.0) throw std::domain_error("negative app-mix probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::domain_error("app mix must sum to 1");
  }
}

namespace {

std::map<AppName, double> published_mix() {
  return {{AppName::INTRASAFED, 0.200},
          {AppName::MOBIAR, 0.763},
          {AppName::NAVIAR, 0.037}};
}

} // namespace

WorkloadProfile catalog_profile() {
  WorkloadProfile p;
  p.lambda_lo = 10.0;
  p.lambda_hi = 20.0;
  p.task_size_mean_kb = 15.0;
  p.app_mix = published_mix();
  p.validate();
  return p;
}

WorkloadProfile random_profile() {
  WorkloadProfile p;
  p.lambda_lo = 60.0;
  p.lambda_hi = 70.0;
  p.task_size_mean_kb = 15.0;
  p.app_mix = published_mix();
  p.validate();
  return p;
}

AppName sample_app_name(const WorkloadProfile& profile, std::mt19937_64& rng) {
  profile.validate();
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  AppName last = AppName::INTRASAFED;
  for (const auto& [name, p] : profile.app_mix) {
    acc += p;
    last = name;
    if (r < acc) return name;
  }
  return last;
}

AppDag sample_random_app(const WorkloadProfile& profile, std::mt19937_64& rng) {
  return instantiate_app(sample_app_name(profile, rng), rng);
}

BackgroundLoad sample_background_load(const WorkloadProfile& profile,
                                      std::mt19937_64& rng) {
  profile.validate();
  BackgroundLoad load;
  load.arrival_rate =
      std::uniform_real_distribution<double>(profile.lambda_lo, profile.lambda_hi)(rng);
  load.task_size_kb =
      std::exponential_distribution<double>(1.0 / profile.task_size_mean_kb)(rng);
  return load;
}

} // namespace fresco::workload
