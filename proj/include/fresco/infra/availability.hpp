#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fresco::infra {

/// Uptime intervals of a node on the normalized [0,1) simulation timeline.
/// Intervals are half-open [start, end), sorted, non-overlapping and merged,
/// so that the union length equals the availability ratio of the node.
class AvailabilityTrace {
public:
  using Interval = std::pair<double, double>;

  AvailabilityTrace() = default;
  explicit AvailabilityTrace(std::vector<Interval> intervals);

  static AvailabilityTrace always_on();

  /// True iff t falls inside an uptime interval. O(log intervals).
  /// Throws std::domain_error for t outside [0,1].
  bool is_available(double t) const;

  /// True iff the whole span [t_begin, t_end] lies inside one uptime interval.
  bool covers(double t_begin, double t_end) const;

  /// Union length of the uptime intervals (timeline has length 1).
  double up_fraction() const;

  const std::vector<Interval>& intervals() const { return intervals_; }

  bool operator==(const AvailabilityTrace&) const = default;

private:
  std::vector<Interval> intervals_;
};

/// Generates an alternating up/down trace whose up-fraction equals `ratio`
/// exactly. Interval lengths start as exponential draws with mean
/// `mean_interval` and are rescaled per phase to hit the ratio.
/// Throws std::domain_error unless 0 < ratio <= 1 and mean_interval > 0.
AvailabilityTrace synth_availability(double ratio, double mean_interval,
                                     std::mt19937_64& rng);

/// Trace store format, one node per line:
///   node_id: s1-e1, s2-e2, ...
/// with start/end as fractions of the normalized timeline.
std::vector<AvailabilityTrace> load_traces(const std::string& path);
std::vector<AvailabilityTrace> parse_traces(std::istream& in);
void write_traces(const std::vector<AvailabilityTrace>& traces, std::ostream& out);

} // namespace fresco::infra
