#include "coex/throughput.hpp"

#include <algorithm>
#include <cmath>

namespace coex {

namespace {

void
network_probabilities(double tau, int n, double& p_tr, double& p_s)
{
  p_tr = 0.0;
  p_s = 0.0;
  if (n <= 0)
    return;
  p_tr = 1.0 - std::pow(1.0 - tau, n);
  if (p_tr > 0.0)
    p_s = n * tau * std::pow(1.0 - tau, n - 1) / p_tr;
}

} // namespace

EventProbabilities
event_probabilities(const Solution& sol, int n_w, int n_l)
{
  EventProbabilities ep;
  network_probabilities(sol.tau_w, n_w, ep.p_trw, ep.p_sw);
  network_probabilities(sol.tau_l, n_l, ep.p_trl, ep.p_sl);
  return ep;
}

EventDurations
event_durations(const WifiParams& w, const LaaParams& l)
{
  const DerivedDurations d = derived_durations(w);
  const double frame = d.mach_us + w.phy_header_us + d.psize_us;
  EventDurations ed;
  ed.t_sw = frame + w.sifs_us + w.prop_delay_us + d.ack_us + w.difs_us + w.prop_delay_us;
  ed.t_cw = frame + w.difs_us + w.prop_delay_us;
  ed.t_sl = l.txop_us + l.next_tx_delay_us;
  ed.t_cl = l.txop_us + l.next_tx_delay_us;
  ed.t_cc = std::max(ed.t_cw, ed.t_cl);
  return ed;
}

EventWeights
event_weights(const EventProbabilities& ep)
{
  const double wifi_quiet = 1.0 - ep.p_trw;
  const double laa_quiet = 1.0 - ep.p_trl;
  EventWeights w;
  w.idle = wifi_quiet * laa_quiet;
  w.wifi_success = ep.p_trw * ep.p_sw * laa_quiet;
  w.laa_success = ep.p_trl * ep.p_sl * wifi_quiet;
  w.wifi_collision = ep.p_trw * (1.0 - ep.p_sw) * laa_quiet;
  w.laa_collision = ep.p_trl * (1.0 - ep.p_sl) * wifi_quiet;
  // Any overlap of the two technologies, whatever happens inside each.
  w.cross_collision = ep.p_trw * ep.p_sw * ep.p_trl * ep.p_sl +
                      ep.p_trw * ep.p_sw * ep.p_trl * (1.0 - ep.p_sl) +
                      ep.p_trw * (1.0 - ep.p_sw) * ep.p_trl * ep.p_sl +
                      ep.p_trw * (1.0 - ep.p_sw) * ep.p_trl * (1.0 - ep.p_sl);
  return w;
}

double
expected_event_time(const EventProbabilities& ep, const EventDurations& ed, double slot_us)
{
  const EventWeights w = event_weights(ep);
  return w.idle * slot_us + w.wifi_success * ed.t_sw + w.laa_success * ed.t_sl +
         w.wifi_collision * ed.t_cw + w.laa_collision * ed.t_cl + w.cross_collision * ed.t_cc;
}

ThroughputReport
coexistence_throughput(const Scenario& raw, const Solution& sol)
{
  const Scenario s = effective(raw);
  const EventProbabilities ep = event_probabilities(sol, s.n_wifi, s.n_laa);
  const EventDurations ed = event_durations(s.wifi, s.laa);
  const double psize_us = derived_durations(s.wifi).psize_us;

  ThroughputReport r;
  r.p_trw = ep.p_trw;
  r.p_sw = ep.p_sw;
  r.p_trl = ep.p_trl;
  r.p_sl = ep.p_sl;
  r.t_sw = ed.t_sw;
  r.t_cw = ed.t_cw;
  r.t_sl = ed.t_sl;
  r.t_cl = ed.t_cl;
  r.t_cc = ed.t_cc;
  r.t_e = expected_event_time(ep, ed, s.wifi.slot_us);

  const double wifi_delivers = ep.p_trw * ep.p_sw * (1.0 - ep.p_trl);
  const double laa_delivers = ep.p_trl * ep.p_sl * (1.0 - ep.p_trw);
  r.tput_wifi_mbps = wifi_delivers * psize_us * s.wifi.data_rate_mbps / r.t_e;
  r.tput_laa_mbps =
    laa_delivers * s.laa.pdcch_fraction * s.laa.txop_us * s.laa.data_rate_mbps / r.t_e;
  r.per_user_wifi_mbps = per_user(r.tput_wifi_mbps, s.n_wifi);
  r.per_user_laa_mbps = per_user(r.tput_laa_mbps, s.n_laa);
  return r;
}

ThroughputReport
wifi_only_throughput(int n, const WifiParams& w, const SolverConfig& cfg)
{
  w.validate();
  const Solution sol = solve_wifi_only(n, w.w0, w.m, cfg, w.hold_stages);
  const EventDurations ed = event_durations(w, LaaParams{});

  // Saturation throughput of a single DCF network:
  //   S = P_s P_tr E[P] / ((1 - P_tr) sigma + P_tr P_s T_s + P_tr (1 - P_s) T_c)
  ThroughputReport r;
  r.p_trw = 1.0 - std::pow(1.0 - sol.tau_w, n);
  r.p_sw = r.p_trw > 0.0 ? n * sol.tau_w * std::pow(1.0 - sol.tau_w, n - 1) / r.p_trw : 0.0;
  r.t_sw = ed.t_sw;
  r.t_cw = ed.t_cw;
  r.t_cc = ed.t_cw;
  r.t_e = (1.0 - r.p_trw) * w.slot_us + r.p_trw * r.p_sw * ed.t_sw +
          r.p_trw * (1.0 - r.p_sw) * ed.t_cw;
  r.tput_wifi_mbps = r.p_sw * r.p_trw * 8.0 * w.payload_bytes / r.t_e;
  r.per_user_wifi_mbps = per_user(r.tput_wifi_mbps, n);
  return r;
}

} // namespace coex
