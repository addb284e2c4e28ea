#ifndef COEX_MARKOV_HPP
#define COEX_MARKOV_HPP

#include <vector>

/**
 * Per-technology backoff chains under saturation.
 *
 * Both chains share one shape: stages 0..m double the window, then the node
 * keeps the maximum window for `extra` more stages before resetting to stage
 * 0. The Wi-Fi DCF chain has extra = 1 (one more attempt at stage m); the LAA
 * LBT chain has extra = e_l (the retry limit). State (j, k) is stage j with
 * backoff counter k; a node transmits from (j, 0).
 */
namespace coex::markov {

enum class ChainKind
{
  wifi,
  laa,
};

/// Materialized stationary distribution b[j][k]. Only built for diagnostics
/// and tests; the closed forms below are what the solver uses.
struct StationaryDistribution
{
  ChainKind chain_kind;
  int w0;
  int m;
  int extra;
  std::vector<std::vector<double>> b; ///< b[j][k], k < window(j)

  double b00() const { return b.front().front(); }
  int stages() const { return static_cast<int>(b.size()); }
  int window(int stage) const;
  /// Sum of every entry; 1 up to rounding.
  double total() const;
  /// Sum over stages of b[j][0].
  double transmit_probability() const;
};

/// Wi-Fi per-slot transmission probability for collision probability p_w in
/// [0, 1]. Throws std::domain_error outside that range or for w0 < 1, m < 0.
/// p_w = 1 is the limit where every attempt fails and the stage wraps.
double wifi_tau(int w0, int m, double p_w);

/// Same chain with `hold_stages` extra attempts at stage m instead of one.
double wifi_tau(int w0, int m, int hold_stages, double p_w);

/// LAA per-slot transmission probability, retry limit e_l in [0, 8].
double laa_tau(int w0, int m, int e_l, double p_l);

StationaryDistribution wifi_stationary(int w0, int m, double p_w);
StationaryDistribution wifi_stationary(int w0, int m, int hold_stages, double p_w);
StationaryDistribution laa_stationary(int w0, int m, int e_l, double p_l);

/// |1 - 2p| below this switches to the cancelled form of the closed
/// expressions, which contain a removable 1/(1 - 2p).
constexpr double kPoleThreshold = 1e-9;

/// Above 1 - kUnitThreshold the geometric sums are added term by term; the
/// closed forms divide by 1 - p and lose all precision as p -> 1.
constexpr double kUnitThreshold = 1e-6;

} // namespace coex::markov

#endif
