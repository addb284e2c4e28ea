#ifndef COEX_CORE_HPP
#define COEX_CORE_HPP

#include <stdexcept>
#include <string>

/**
 * Shared domain types for the Wi-Fi / LAA coexistence model.
 *
 * Unit conventions used everywhere in the library:
 *   - times are microseconds (double),
 *   - rates are Mbps, so bits / Mbps yields microseconds,
 *   - sizes are bytes,
 *   - powers are dBm at the API boundary and mW internally.
 */
namespace coex {

/// Invalid user input. Carries the dotted name of the offending field
/// (e.g. "laa.txop_us") so front-ends can point at it.
class InputError : public std::invalid_argument
{
public:
  InputError(std::string field, const std::string& what);

  const std::string& field() const noexcept { return m_field; }

private:
  std::string m_field;
};

/// DCF contention and frame-timing parameters. Defaults are the usual
/// 802.11a values (2048 B payload at 9 Mbps, 6 Mbps control rate).
struct WifiParams
{
  int w0 = 16;                    ///< minimum contention window, slots
  int m = 6;                      ///< maximum backoff stage
  int hold_stages = 1;            ///< extra attempts at stage m before the reset
  double payload_bytes = 2048.0;
  double data_rate_mbps = 9.0;
  double control_rate_mbps = 6.0; ///< rate of the ACK frame
  double phy_header_us = 20.0;
  double mac_header_bytes = 34.0;
  double ack_bytes = 14.0;
  double difs_us = 34.0;
  double sifs_us = 16.0;
  double slot_us = 9.0;
  double prop_delay_us = 0.1;

  /// Throws InputError naming the first field that breaks an invariant.
  /// `prefix` is prepended to field names ("wifi" -> "wifi.w0").
  void validate(const std::string& prefix = "wifi") const;

  bool operator==(const WifiParams&) const = default;
};

/// LBT contention and transmission parameters of an LAA eNB.
struct LaaParams
{
  int w0 = 16;
  int m = 2;
  int retry_limit = 1;             ///< stages held at the maximum window, 0..8
  double defer_us = 43.0;
  double txop_us = 8000.0;
  double next_tx_delay_us = 500.0; ///< slot alignment + reservation signal
  double data_rate_mbps = 7.8;
  double pdcch_fraction = 13.0 / 14.0;

  void validate(const std::string& prefix = "laa") const;

  bool operator==(const LaaParams&) const = default;
};

constexpr int kMaxRetryLimit = 8;
constexpr double kMaxTxopUs = 10000.0;

/// TXOP of priority classes 3 and 4: 8 ms when sharing the channel,
/// 10 ms when no other technology is known to be present.
enum class TxopVariant
{
  coexistence,
  exclusive,
};

/// Channel-access priority class presets (defer time, window, stages, TXOP).
/// retry_limit and next_tx_delay_us take their defaults (1 and 500 us).
/// Throws std::domain_error for a class outside 1..4.
LaaParams load_priority_class(int class_id, TxopVariant txop = TxopVariant::coexistence);

struct DerivedDurations
{
  double psize_us; ///< payload airtime at the data rate
  double mach_us;  ///< MAC header airtime at the data rate
  double ack_us;   ///< ACK airtime at the control rate
};

DerivedDurations derived_durations(const WifiParams& p);

struct Scenario
{
  std::string name;
  int n_wifi = 1;
  int n_laa = 1;
  WifiParams wifi;
  LaaParams laa;
  double p_dw = 1.0; ///< Wi-Fi detection probability of LAA energy
  double p_dl = 1.0; ///< LAA detection probability of Wi-Fi energy
  /// Reproduce the hardware testbed timing: backoff stages reset as soon as
  /// the maximum stage is exceeded (no extra attempts, in either chain) and
  /// the LAA post-transmission delay equals DIFS.
  bool comparison_mode = false;

  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// The parameters the engines actually use. With comparison_mode set this
/// forces laa.retry_limit = 0, wifi.hold_stages = 0 and
/// laa.next_tx_delay_us = wifi.difs_us; otherwise returns `s` unchanged.
/// Idempotent.
Scenario effective(const Scenario& s);

/// Fixed point of the coupled collision/transmission equations.
struct Solution
{
  double tau_w = 0.0;
  double tau_l = 0.0;
  double p_w = 0.0;
  double p_l = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct ThroughputReport
{
  double p_trw = 0.0;
  double p_sw = 0.0;
  double p_trl = 0.0;
  double p_sl = 0.0;
  double t_sw = 0.0;
  double t_cw = 0.0;
  double t_sl = 0.0;
  double t_cl = 0.0;
  double t_cc = 0.0;
  double t_e = 0.0;
  double tput_wifi_mbps = 0.0;
  double tput_laa_mbps = 0.0;
  double per_user_wifi_mbps = 0.0;
  double per_user_laa_mbps = 0.0;

  double total_mbps() const { return tput_wifi_mbps + tput_laa_mbps; }
};

/// total / n, or 0 for an empty network.
double per_user(double total, int n);

} // namespace coex

#endif
