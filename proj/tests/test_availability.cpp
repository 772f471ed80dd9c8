#include <doctest.h>

#include <random>
#include <sstream>

#include "fresco/infra/availability.hpp"

using fresco::infra::AvailabilityTrace;
using fresco::infra::parse_traces;
using fresco::infra::synth_availability;
using fresco::infra::write_traces;

TEST_CASE("single full interval is always up") {
  AvailabilityTrace t({{0.0, 1.0}});
  CHECK(t.is_available(0.0));
  CHECK(t.is_available(0.5));
  CHECK(t.up_fraction() == doctest::Approx(1.0));
}

TEST_CASE("gaps read as down, interval ends are half-open") {
  AvailabilityTrace t({{0.0, 0.25}, {0.5, 0.75}});
  CHECK(t.is_available(0.1));
  CHECK_FALSE(t.is_available(0.3));
  CHECK(t.is_available(0.5));
  CHECK_FALSE(t.is_available(0.25)); // end boundary is exclusive
  CHECK_FALSE(t.is_available(0.9));
  CHECK(t.up_fraction() == doctest::Approx(0.5));
}

TEST_CASE("overlapping intervals are merged and sorted") {
  AvailabilityTrace t({{0.5, 0.8}, {0.1, 0.3}, {0.2, 0.6}});
  REQUIRE(t.intervals().size() == 1);
  CHECK(t.intervals()[0].first == doctest::Approx(0.1));
  CHECK(t.intervals()[0].second == doctest::Approx(0.8));
}

TEST_CASE("queries outside the unit timeline are rejected") {
  AvailabilityTrace t({{0.0, 1.0}});
  CHECK_THROWS_AS(t.is_available(-0.1), std::domain_error);
  CHECK_THROWS_AS(t.is_available(1.5), std::domain_error);
  CHECK_THROWS_AS(AvailabilityTrace({{0.4, 0.2}}), std::domain_error);
  CHECK_THROWS_AS(AvailabilityTrace({{-0.1, 0.2}}), std::domain_error);
}

TEST_CASE("covers requires the whole span inside one uptime window") {
  AvailabilityTrace t({{0.0, 0.4}, {0.6, 1.0}});
  CHECK(t.covers(0.1, 0.3));
  CHECK_FALSE(t.covers(0.3, 0.7)); // straddles an outage
  CHECK_FALSE(t.covers(0.45, 0.5));
  CHECK(t.covers(0.6, 1.0));
}

TEST_CASE("synthetic trace hits the requested uptime ratio") {
  std::mt19937_64 rng(7);
  for (double ratio : {0.65, 0.6, 0.7}) {
    auto t = synth_availability(ratio, 0.05, rng);
    CHECK(t.up_fraction() == doctest::Approx(ratio).epsilon(1e-9));

    // Monte-Carlo probe: the point-availability estimate must agree too.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int up = 0;
    const int probes = 10000;
    for (int i = 0; i < probes; ++i) up += t.is_available(u(rng)) ? 1 : 0;
    CHECK(static_cast<double>(up) / probes == doctest::Approx(ratio).epsilon(0.02));
  }
}

TEST_CASE("binary-search availability agrees with a linear scan") {
  std::mt19937_64 rng(11);
  auto t = synth_availability(0.65, 0.03, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double q = u(rng);
    bool linear = false;
    for (const auto& [s, e] : t.intervals()) {
      if (q >= s && q < e) { linear = true; break; }
    }
    CHECK(t.is_available(q) == linear);
  }
}

TEST_CASE("trace text round-trips through the node_id format") {
  std::mt19937_64 rng(3);
  std::vector<AvailabilityTrace> traces;
  traces.push_back(synth_availability(0.65, 0.1, rng));
  traces.push_back(AvailabilityTrace::always_on());
  traces.push_back(synth_availability(0.6, 0.05, rng));

  std::stringstream ss;
  write_traces(traces, ss);
  auto back = parse_traces(ss);
  REQUIRE(back.size() == traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    REQUIRE(back[i].intervals().size() == traces[i].intervals().size());
    for (std::size_t j = 0; j < back[i].intervals().size(); ++j) {
      CHECK(back[i].intervals()[j].first ==
            doctest::Approx(traces[i].intervals()[j].first).epsilon(1e-8));
      CHECK(back[i].intervals()[j].second ==
            doctest::Approx(traces[i].intervals()[j].second).epsilon(1e-8));
    }
  }
}

TEST_CASE("trace parser flags malformed lines with their line number") {
  std::stringstream ss("0: 0.0-0.5\nbogus line\n");
  CHECK_THROWS_WITH_AS(parse_traces(ss), doctest::Contains("line 2"),
                       std::runtime_error);
}
