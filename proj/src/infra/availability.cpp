#include "fresco/infra/availability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fresco::infra {

namespace {

std::vector<AvailabilityTrace::Interval>
normalize(std::vector<AvailabilityTrace::Interval> iv) {
  for (const auto& [s, e] : iv) {
    if (!(s >= 0.0 && e <= 1.0 && s < e)) {
      throw std::domain_error("availability interval outside [0,1) or empty");
    }
  }
  std::sort(iv.begin(), iv.end());
  std::vector<AvailabilityTrace::Interval> merged;
  for (const auto& [s, e] : iv) {
    if (!merged.empty() && s <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, e);
    } else {
      merged.emplace_back(s, e);
    }
  }
  return merged;
}

} // namespace

AvailabilityTrace::AvailabilityTrace(std::vector<Interval> intervals)
    : intervals_(normalize(std::move(intervals))) {}

AvailabilityTrace AvailabilityTrace::always_on() {
  return AvailabilityTrace({{0.0, 1.0}});
}

bool AvailabilityTrace::is_available(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("availability query outside [0,1]");
  }
  // First interval with start > t; the candidate is its predecessor.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double v, const Interval& iv) { return v < iv.first; });
  if (it == intervals_.begin()) return false;
  --it;
  return t < it->second;
}

bool AvailabilityTrace::covers(double t_begin, double t_end) const {
  if (t_end < t_begin) throw std::domain_error("empty availability span");
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t_begin,
                             [](double v, const Interval& iv) { return v < iv.first; });
  if (it == intervals_.begin()) return false;
  --it;
  return t_begin < it->second && t_end <= it->second;
}

double AvailabilityTrace::up_fraction() const {
  double total = 0.0;
  for (const auto& [s, e] : intervals_) total += e - s;
  return total;
}

AvailabilityTrace synth_availability(double ratio, double mean_interval,
                                     std::mt19937_64& rng) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw std::domain_error("availability ratio must be in (0,1]");
  }
  if (!(mean_interval > 0.0)) {
    throw std::domain_error("mean interval must be positive");
  }
  if (ratio == 1.0) return AvailabilityTrace::always_on();

  std::exponential_distribution<double> up_len(1.0 / mean_interval);
  std::exponential_distribution<double> down_len(ratio / (mean_interval * (1.0 - ratio)));
  std::bernoulli_distribution starts_up(ratio);

  // Draw alternating raw phase lengths until the timeline is oversubscribed.
  std::vector<double> ups, downs;
  bool up = starts_up(rng);
  const bool first_up = up;
  double up_sum = 0.0, down_sum = 0.0;
  while (up_sum + down_sum < 1.0 || ups.empty() || downs.empty()) {
    if (up) {
      ups.push_back(up_len(rng));
      up_sum += ups.back();
    } else {
      downs.push_back(down_len(rng));
      down_sum += downs.back();
    }
    up = !up;
  }

  // Rescale each phase so up time is exactly `ratio` and the total is 1.
  const double up_scale = ratio / up_sum;
  const double down_scale = (1.0 - ratio) / down_sum;

  std::vector<AvailabilityTrace::Interval> intervals;
  double t = 0.0;
  std::size_t ui = 0, di = 0;
  up = first_up;
  while (ui < ups.size() || di < downs.size()) {
    if (up && ui < ups.size()) {
      const double len = ups[ui++] * up_scale;
      const double end = std::min(t + len, 1.0);
      if (end > t) intervals.emplace_back(t, end);
      t = end;
    } else if (!up && di < downs.size()) {
      t = std::min(t + downs[di++] * down_scale, 1.0);
    }
    up = !up;
  }
  return AvailabilityTrace(std::move(intervals));
}

std::vector<AvailabilityTrace> parse_traces(std::istream& in) {
  std::vector<AvailabilityTrace> traces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": missing 'node_id:' prefix");
    }
    std::vector<AvailabilityTrace::Interval> intervals;
    std::stringstream rest(line.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      double s = 0.0, e = 0.0;
      char dash = 0;
      std::stringstream pair(item);
      if (!(pair >> s >> dash >> e) || dash != '-') {
        throw std::runtime_error("trace line " + std::to_string(line_no) +
                                 ": malformed interval '" + item + "'");
      }
      intervals.emplace_back(s, e);
    }
    traces.emplace_back(std::move(intervals));
  }
  return traces;
}

std::vector<AvailabilityTrace> load_traces(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_traces(in);
}

void write_traces(const std::vector<AvailabilityTrace>& traces, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < traces.size(); ++i) {
    out << i << ":";
    const auto& iv = traces[i].intervals();
    for (std::size_t j = 0; j < iv.size(); ++j) {
      std::snprintf(buf, sizeof(buf), " %.9f-%.9f", iv[j].first, iv[j].second);
      out << buf << (j + 1 < iv.size() ? "," : "");
    }
    out << "\n";
  }
}

} // namespace fresco::infra
