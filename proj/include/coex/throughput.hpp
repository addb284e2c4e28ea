#ifndef COEX_THROUGHPUT_HPP
#define COEX_THROUGHPUT_HPP

#include "coex/core.hpp"
#include "coex/solver.hpp"

namespace coex {

struct EventProbabilities
{
  double p_trw = 0.0; ///< at least one Wi-Fi AP transmits
  double p_sw = 0.0;  ///< exactly one, given at least one (0 when p_trw = 0)
  double p_trl = 0.0;
  double p_sl = 0.0;
};

struct EventDurations
{
  double t_sw = 0.0;
  double t_cw = 0.0;
  double t_sl = 0.0;
  double t_cl = 0.0;
  double t_cc = 0.0; ///< Wi-Fi/LAA overlap, the longer of the two collisions
};

/// Probability of each kind of channel event in one contention slot. The six
/// weights sum to one.
struct EventWeights
{
  double idle = 0.0;
  double wifi_success = 0.0;
  double laa_success = 0.0;
  double wifi_collision = 0.0;
  double laa_collision = 0.0;
  double cross_collision = 0.0;

  double sum() const
  {
    return idle + wifi_success + laa_success + wifi_collision + laa_collision + cross_collision;
  }
};

EventProbabilities event_probabilities(const Solution& sol, int n_w, int n_l);

EventDurations event_durations(const WifiParams& w, const LaaParams& l);

EventWeights event_weights(const EventProbabilities& ep);

/// Mean duration of a channel event, T_E, in microseconds.
double expected_event_time(const EventProbabilities& ep, const EventDurations& ed,
                           double slot_us);

/// Throughput of both networks at the fixed point `sol` of `s`.
/// Wi-Fi counts payload bits only; LAA counts the PDSCH share of the TXOP.
ThroughputReport coexistence_throughput(const Scenario& s, const Solution& sol);

/// Classic saturation throughput of n Wi-Fi APs with no LAA present.
/// LAA fields of the report are zero. Propagates SolverError.
ThroughputReport wifi_only_throughput(int n, const WifiParams& w, const SolverConfig& cfg = {});

} // namespace coex

#endif
