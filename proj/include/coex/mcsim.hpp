#ifndef COEX_MCSIM_HPP
#define COEX_MCSIM_HPP

#include "coex/core.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>

/**
 * Slot-level Monte-Carlo simulation of saturated Wi-Fi APs and LAA eNBs on
 * one channel. It follows the same slotted abstraction as the analytical
 * model (every node with a zero counter transmits at the start of an event,
 * everyone else counts down once per event) but tracks each node's backoff
 * state explicitly, so it checks the decoupling assumption behind the fixed
 * point rather than repeating it.
 */
namespace coex::sim {

enum class EventClass : int
{
  idle,
  wifi_success,
  laa_success,
  wifi_collision,
  laa_collision,
  cross_collision,
};

constexpr int kEventClasses = 6;

const char* to_string(EventClass c);

struct SimConfig
{
  Scenario scenario;
  std::uint64_t horizon_events = 2'000'000;
  std::uint64_t warmup_events = 10'000; ///< excluded from every statistic
  std::uint64_t seed = 1;
  int batches = 100; ///< batch-means standard errors

  void validate() const;
};

struct Estimate
{
  double value = 0.0;
  double std_error = 0.0;

  bool operator==(const Estimate&) const = default;
};

struct SimReport
{
  Estimate tput_wifi_mbps;
  Estimate tput_laa_mbps;
  Estimate measured_tau_w; ///< transmissions per AP per event
  Estimate measured_p_w;   ///< share of Wi-Fi transmissions treated as failed
  Estimate measured_tau_l;
  Estimate measured_p_l;
  std::array<std::uint64_t, kEventClasses> event_counts{};
  std::array<Estimate, kEventClasses> event_frequencies{};
  std::uint64_t measured_events = 0;
  double simulated_time_us = 0.0;

  bool operator==(const SimReport&) const = default;
};

/// Perfect cross-technology detection: any overlap is a collision for
/// everyone involved. Detection probabilities in the scenario are ignored.
/// When `trace` is non-null a CSV line per event (including warm-up) is
/// written with the backoff stage/counter of every node before the event.
SimReport simulate(const SimConfig& cfg, std::ostream* trace = nullptr);

/// As simulate(), but a lone Wi-Fi transmitter overlapped only by LAA counts
/// the attempt as failed with probability p_dw (otherwise its backoff treats
/// it as delivered); symmetrically for a lone LAA transmitter with p_dl. The
/// event still carries no payload and lasts T_cc.
SimReport simulate_with_detection(const SimConfig& cfg, std::ostream* trace = nullptr);

/// Unbiased integer in [0, n) by rejection, reproducible on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

} // namespace coex::sim

#endif
