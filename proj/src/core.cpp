#include "coex/core.hpp"

#include <cmath>

namespace coex {

InputError::InputError(std::string field, const std::string& what)
  : std::invalid_argument(field + ": " + what), m_field(std::move(field))
{
}

namespace {

void
require(bool ok, const std::string& prefix, const char* field, const char* what)
{
  if (!ok)
    throw InputError(prefix + "." + field, what);
}

bool
positive(double x)
{
  return std::isfinite(x) && x > 0.0;
}

} // namespace

void
WifiParams::validate(const std::string& prefix) const
{
  require(w0 >= 1, prefix, "w0", "must be >= 1");
  require(m >= 0 && m <= 20, prefix, "m", "must be in [0, 20]");
  require(hold_stages >= 0 && hold_stages <= kMaxRetryLimit, prefix, "hold_stages",
          "must be in [0, 8]");
  require(positive(payload_bytes) && payload_bytes >= 1.0, prefix, "payload_bytes",
          "must be >= 1");
  require(positive(data_rate_mbps), prefix, "data_rate_mbps", "must be positive");
  require(positive(control_rate_mbps), prefix, "control_rate_mbps", "must be positive");
  require(positive(phy_header_us), prefix, "phy_header_us", "must be positive");
  require(positive(mac_header_bytes), prefix, "mac_header_bytes", "must be positive");
  require(positive(ack_bytes), prefix, "ack_bytes", "must be positive");
  require(positive(difs_us), prefix, "difs_us", "must be positive");
  require(positive(sifs_us), prefix, "sifs_us", "must be positive");
  require(positive(slot_us), prefix, "slot_us", "must be positive");
  require(positive(prop_delay_us), prefix, "prop_delay_us", "must be positive");
}

void
LaaParams::validate(const std::string& prefix) const
{
  require(w0 >= 1, prefix, "w0", "must be >= 1");
  require(m >= 0 && m <= 20, prefix, "m", "must be in [0, 20]");
  require(retry_limit >= 0 && retry_limit <= kMaxRetryLimit, prefix, "retry_limit",
          "must be in [0, 8]");
  require(positive(defer_us), prefix, "defer_us", "must be positive");
  require(positive(txop_us), prefix, "txop_us", "must be positive");
  require(txop_us <= kMaxTxopUs, prefix, "txop_us", "must not exceed 10000");
  require(positive(next_tx_delay_us), prefix, "next_tx_delay_us", "must be positive");
  require(positive(data_rate_mbps), prefix, "data_rate_mbps", "must be positive");
  require(positive(pdcch_fraction) && pdcch_fraction <= 1.0, prefix, "pdcch_fraction",
          "must be in (0, 1]");
}

LaaParams
load_priority_class(int class_id, TxopVariant txop)
{
  const double long_txop = txop == TxopVariant::exclusive ? 10000.0 : 8000.0;
  LaaParams p;
  switch (class_id) {
    case 1:
      p.defer_us = 25.0;
      p.w0 = 4;
      p.m = 1;
      p.txop_us = 2000.0;
      break;
    case 2:
      p.defer_us = 25.0;
      p.w0 = 8;
      p.m = 1;
      p.txop_us = 3000.0;
      break;
    case 3:
      p.defer_us = 43.0;
      p.w0 = 16;
      p.m = 2;
      p.txop_us = long_txop;
      break;
    case 4:
      p.defer_us = 79.0;
      p.w0 = 16;
      p.m = 6;
      p.txop_us = long_txop;
      break;
    default:
      throw std::domain_error("priority class must be 1..4, got " + std::to_string(class_id));
  }
  return p;
}

DerivedDurations
derived_durations(const WifiParams& p)
{
  // 8 bits per byte; bits / Mbps = us.
  return {
    8.0 * p.payload_bytes / p.data_rate_mbps,
    8.0 * p.mac_header_bytes / p.data_rate_mbps,
    8.0 * p.ack_bytes / p.control_rate_mbps,
  };
}

void
Scenario::validate() const
{
  if (n_wifi < 0)
    throw InputError("nodes.wifi", "must be >= 0");
  if (n_laa < 0)
    throw InputError("nodes.laa", "must be >= 0");
  if (n_wifi + n_laa < 1)
    throw InputError("nodes", "at least one node is required");
  wifi.validate("wifi");
  laa.validate("laa");
  if (!(p_dw >= 0.0 && p_dw <= 1.0))
    throw InputError("detection.p_dw", "must be in [0, 1]");
  if (!(p_dl >= 0.0 && p_dl <= 1.0))
    throw InputError("detection.p_dl", "must be in [0, 1]");
}

Scenario
effective(const Scenario& s)
{
  Scenario e = s;
  if (e.comparison_mode) {
    e.laa.retry_limit = 0;
    e.wifi.hold_stages = 0;
    e.laa.next_tx_delay_us = e.wifi.difs_us;
  }
  return e;
}

double
per_user(double total, int n)
{
  return n > 0 ? total / n : 0.0;
}

} // namespace coex
