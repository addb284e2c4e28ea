#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coex/mcsim.hpp"
#include "coex/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

using namespace coex;
using namespace coex::sim;

namespace {

SimConfig
config(const Scenario& s, std::uint64_t horizon = 200'000, std::uint64_t seed = 1)
{
  SimConfig c;
  c.scenario = s;
  c.horizon_events = horizon;
  c.warmup_events = 10'000;
  c.seed = seed;
  return c;
}

Scenario
table4_case3()
{
  Scenario s;
  s.comparison_mode = true;
  s.wifi.m = 2;
  return s;
}

} // namespace

TEST_CASE("uniform_below")
{
  std::mt19937_64 rng(3);
  CHECK(uniform_below(rng, 1) == 0);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 60000; ++i) {
    const auto x = uniform_below(rng, 6);
    REQUIRE(x < 6);
    ++hist[x];
  }
  for (const auto& [k, v] : hist)
    CHECK(std::abs(v - 10000) < 500);
  // A bound just above a power of two rejects almost half the draws.
  const std::uint64_t big = (std::uint64_t{1} << 63) + 1;
  for (int i = 0; i < 100; ++i)
    CHECK(uniform_below(rng, big) < big);
}

TEST_CASE("event class names")
{
  CHECK(std::string(to_string(EventClass::idle)) == "idle");
  CHECK(std::string(to_string(EventClass::wifi_success)) == "wifi-success");
  CHECK(std::string(to_string(EventClass::laa_success)) == "laa-success");
  CHECK(std::string(to_string(EventClass::wifi_collision)) == "wifi-collision");
  CHECK(std::string(to_string(EventClass::laa_collision)) == "laa-collision");
  CHECK(std::string(to_string(EventClass::cross_collision)) == "cross-collision");
}

TEST_CASE("configuration checks")
{
  SimConfig c = config(Scenario{});
  c.warmup_events = c.horizon_events;
  CHECK_THROWS_AS(simulate(c), InputError);
  c = config(Scenario{});
  c.batches = 0;
  CHECK_THROWS_AS(simulate(c), InputError);
  c = config(Scenario{});
  c.scenario.laa.txop_us = -1;
  CHECK_THROWS_AS(simulate(c), InputError);
}

TEST_CASE("same seed, same report")
{
  const SimConfig c = config(table4_case3(), 100'000, 99);
  CHECK(simulate(c) == simulate(c));
  SimConfig other = c;
  other.seed = 100;
  CHECK_FALSE(simulate(c) == simulate(other));
}

TEST_CASE("perfect detection reproduces simulate()")
{
  Scenario s = table4_case3();
  s.n_wifi = 3;
  s.n_laa = 2;
  CHECK(simulate_with_detection(config(s)) == simulate(config(s)));
}

TEST_CASE("event accounting")
{
  Scenario s;
  s.n_wifi = 3;
  s.n_laa = 2;
  const SimReport r = simulate(config(s));
  CHECK(r.measured_events == 190'000);
  CHECK(std::accumulate(r.event_counts.begin(), r.event_counts.end(), std::uint64_t{0}) ==
        r.measured_events);
  double freq = 0.0;
  for (const auto& f : r.event_frequencies)
    freq += f.value;
  CHECK(freq == doctest::Approx(1.0));
  CHECK(r.tput_wifi_mbps.value >= 0.0);
  CHECK(r.tput_laa_mbps.value >= 0.0);
  CHECK(r.tput_wifi_mbps.std_error > 0.0);
}

TEST_CASE("a lone AP never collides")
{
  Scenario s;
  s.n_wifi = 1;
  s.n_laa = 0;
  const SimReport r = simulate(config(s));
  CHECK(r.measured_p_w.value == 0.0);
  CHECK(r.event_counts[static_cast<int>(EventClass::wifi_collision)] == 0);
  CHECK(r.event_counts[static_cast<int>(EventClass::cross_collision)] == 0);
  // Every transmission succeeds, so tau is exactly the stage-0 rate.
  CHECK(r.measured_tau_w.value == doctest::Approx(2.0 / 17).epsilon(0.01));
}

TEST_CASE("Wi-Fi that cannot sense LAA never records a failure")
{
  Scenario s = table4_case3();
  s.p_dw = 0.0;
  s.n_laa = 3;
  const SimReport r = simulate_with_detection(config(s));
  CHECK(r.measured_p_w.value == 0.0);
  CHECK(r.event_counts[static_cast<int>(EventClass::cross_collision)] > 0);
}

TEST_CASE("two Wi-Fi APs, aggregate throughput")
{
  Scenario s;
  s.n_wifi = 2;
  s.n_laa = 0;
  const SimReport r = simulate(config(s, 2'000'000));
  CHECK(std::abs(r.tput_wifi_mbps.value / 7.77 - 1.0) < 0.02);
}

TEST_CASE("one AP and one eNB: measured tau near the fixed point")
{
  const Scenario s = table4_case3();
  const Solution sol = solve_coexistence(s);
  const SimReport r = simulate(config(s, 2'000'000));
  CAPTURE(sol.tau_w);
  CAPTURE(r.measured_tau_w.value);
  CAPTURE(r.measured_tau_w.std_error);
  CAPTURE(sol.tau_l);
  CAPTURE(r.measured_tau_l.value);
  CAPTURE(r.measured_tau_l.std_error);
  CHECK(std::abs(r.measured_tau_w.value - sol.tau_w) <= 3 * r.measured_tau_w.std_error);
  CHECK(std::abs(r.measured_tau_l.value - sol.tau_l) <= 3 * r.measured_tau_l.std_error);
}

// Currently fails. The weights treat attempts as independent; with one AP
// and one eNB the simulated idle and cross-collision shares sit a few
// percent off, which is many standard errors at 2e6 events.
TEST_CASE("event frequencies match the analytic weights")
{
  const Scenario s = table4_case3();
  const Solution sol = solve_coexistence(s);
  const EventWeights w = event_weights(event_probabilities(sol, s.n_wifi, s.n_laa));
  const double expect[] = {w.idle,           w.wifi_success,  w.laa_success,
                           w.wifi_collision, w.laa_collision, w.cross_collision};
  const SimReport r = simulate(config(s, 2'000'000));
  for (int c = 0; c < kEventClasses; ++c) {
    const Estimate& f = r.event_frequencies[static_cast<std::size_t>(c)];
    CAPTURE(c);
    CAPTURE(f.value);
    CAPTURE(f.std_error);
    CAPTURE(expect[c]);
    CHECK(std::abs(f.value - expect[c]) <= std::max(3 * f.std_error, 1e-12));
  }
}

TEST_CASE("better LAA sensing helps Wi-Fi")
{
  Scenario s = table4_case3();
  double prev = -1.0;
  for (double p_dl : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    s.p_dl = p_dl;
    const SimReport r = simulate_with_detection(config(s, 400'000, 5));
    CAPTURE(p_dl);
    CHECK(r.tput_wifi_mbps.value >= prev);
    prev = r.tput_wifi_mbps.value;
  }
}

TEST_CASE("trace output")
{
  Scenario s;
  s.n_wifi = 2;
  s.n_laa = 1;
  SimConfig c = config(s, 50, 7);
  c.warmup_events = 10;
  c.batches = 10;
  std::ostringstream out;
  const SimReport traced = simulate(c, &out);
  CHECK(traced == simulate(c));

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "event,class,duration_us,wifi0_stage,wifi0_counter,wifi1_stage,wifi1_counter,"
                "laa0_stage,laa0_counter");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
    CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 50);
}
