#ifndef COEX_ED_HPP
#define COEX_ED_HPP

/// Energy-detector sensing of the other technology.
namespace coex::ed {

struct EdConfig
{
  double threshold_dbm = -72.0;
  double signal_power_dbm = -72.0; ///< received interference power
  double noise_power_dbm = -94.0;
  int samples = 680; ///< 34 us DIFS at 20 Msample/s

  /// Signal power given as SNR over the noise floor.
  static EdConfig from_snr(double threshold_dbm, double snr_db, double noise_power_dbm,
                           int samples);

  void validate() const;
};

double dbm_to_mw(double dbm);

/// Standard Gaussian tail Q(x) = P(Z > x).
double gaussian_tail(double x);

/**
 * P(energy statistic > threshold) under the Gaussian approximation of the
 * averaged |r(n)|^2 over M samples:
 *
 *   P_d = Q((eta - (sn + sx)) / (sqrt(2 / M) (sn + sx)))
 *
 * with eta, sn, sx in mW.
 */
double detection_probability(const EdConfig& c);

} // namespace coex::ed

#endif
