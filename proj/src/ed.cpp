#include "coex/ed.hpp"

#include "coex/core.hpp"

#include <cmath>

namespace coex::ed {

EdConfig
EdConfig::from_snr(double threshold_dbm, double snr_db, double noise_power_dbm, int samples)
{
  return {threshold_dbm, noise_power_dbm + snr_db, noise_power_dbm, samples};
}

void
EdConfig::validate() const
{
  if (samples < 1)
    throw InputError("ed.samples", "must be >= 1");
  if (!std::isfinite(threshold_dbm))
    throw InputError("ed.threshold_dbm", "must be finite");
  if (!std::isfinite(signal_power_dbm))
    throw InputError("ed.signal_power_dbm", "must be finite");
  if (!std::isfinite(noise_power_dbm))
    throw InputError("ed.noise_power_dbm", "must be finite");
}

double
dbm_to_mw(double dbm)
{
  return std::pow(10.0, dbm / 10.0);
}

double
gaussian_tail(double x)
{
  // erfc keeps full relative precision deep into the upper tail, where
  // 1 - Phi(x) would cancel.
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double
detection_probability(const EdConfig& c)
{
  c.validate();
  const double eta = dbm_to_mw(c.threshold_dbm);
  const double mean = dbm_to_mw(c.noise_power_dbm) + dbm_to_mw(c.signal_power_dbm);
  const double spread = std::sqrt(2.0 / c.samples) * mean;
  return gaussian_tail((eta - mean) / spread);
}

} // namespace coex::ed
