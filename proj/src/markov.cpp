#include "coex/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coex::markov {

namespace {

void
check_args(int w0, int m, int extra, double p)
{
  if (w0 < 1)
    throw std::domain_error("contention window must be >= 1");
  if (m < 0)
    throw std::domain_error("maximum stage must be >= 0");
  if (extra < 0)
    throw std::domain_error("extra stages must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("collision probability must be in [0, 1], got " +
                            std::to_string(p));
}

bool
near_one(double p)
{
  return p > 1.0 - kUnitThreshold;
}

/// 1 / b00 = sum_j p^j (W_j + 1) / 2, summed term by term. Used near p = 1
/// where the closed forms divide by 1 - p.
double
expected_slots(int w0, int m, int extra, double p)
{
  double sum = 0.0;
  double pj = 1.0;
  for (int j = 0; j <= m + extra; ++j) {
    sum += pj * (std::ldexp(static_cast<double>(w0), std::min(j, m)) + 1.0) / 2.0;
    pj *= p;
  }
  return sum;
}

double
series_tau(int w0, int m, int extra, double p)
{
  double visits = 0.0;
  double pj = 1.0;
  for (int j = 0; j <= m + extra; ++j) {
    visits += pj;
    pj *= p;
  }
  return visits / expected_slots(w0, m, extra, p);
}

bool
near_pole(double p)
{
  return std::abs(1.0 - 2.0 * p) < kPoleThreshold;
}

/// sum_{i=0}^{m} (2p)^i, the cancelled form of (1 - (2p)^(m+1)) / (1 - 2p).
double
doubling_series(double p, int m)
{
  double sum = 0.0;
  double term = 1.0;
  for (int i = 0; i <= m; ++i) {
    sum += term;
    term *= 2.0 * p;
  }
  return sum;
}

double
doubling_ratio(double p, int m)
{
  if (near_pole(p))
    return doubling_series(p, m);
  return (1.0 - std::pow(2.0 * p, m + 1)) / (1.0 - 2.0 * p);
}

/// b00 of a chain with `extra` stages held at the maximum window.
double
head_probability(int w0, int m, int extra, double p)
{
  if (near_one(p))
    return 1.0 / expected_slots(w0, m, extra, p);
  const double top = std::pow(p, m + extra + 1);
  const double held = std::ldexp((std::pow(p, m + 1) - top) / (1.0 - p), m);
  return 2.0 / (w0 * (doubling_ratio(p, m) + held) + (1.0 - top) / (1.0 - p));
}

/// Wi-Fi b00 with one extra stage, written out as for the DCF chain.
double
wifi_head_probability(int w0, int m, double p)
{
  if (near_one(p))
    return 1.0 / expected_slots(w0, m, 1, p);
  const double held = std::ldexp((std::pow(p, m + 1) - std::pow(p, m + 2)) / (1.0 - p), m);
  const double visits = (1.0 - std::pow(p, m + 2)) / (1.0 - p);
  return 2.0 / (w0 * (doubling_ratio(p, m) + held) + visits);
}

StationaryDistribution
materialize(ChainKind kind, int w0, int m, int extra, double b00, double p)
{
  StationaryDistribution d{kind, w0, m, extra, {}};
  d.b.resize(static_cast<std::size_t>(m + extra + 1));
  double head = b00;
  for (int j = 0; j <= m + extra; ++j) {
    const int w = d.window(j);
    auto& stage = d.b[static_cast<std::size_t>(j)];
    stage.resize(static_cast<std::size_t>(w));
    for (int k = 0; k < w; ++k)
      stage[static_cast<std::size_t>(k)] = head * (w - k) / w;
    head *= p;
  }
  return d;
}

} // namespace

int
StationaryDistribution::window(int stage) const
{
  return w0 << (stage < m ? stage : m);
}

double
StationaryDistribution::total() const
{
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& stage : b) {
    for (double x : stage) {
      const double y = x - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

double
StationaryDistribution::transmit_probability() const
{
  double sum = 0.0;
  for (const auto& stage : b)
    sum += stage.front();
  return sum;
}

double
wifi_tau(int w0, int m, double p_w)
{
  check_args(w0, m, 1, p_w);
  if (near_one(p_w))
    return series_tau(w0, m, 1, p_w);
  const double p = p_w;
  const double two_m = std::ldexp(1.0, m);
  const double tail = std::pow(p, m + 1) - std::pow(p, m + 2);
  const double visits = 1.0 - std::pow(p, m + 2);
  double ratio;
  if (near_pole(p)) {
    ratio = (doubling_series(p, m) * (1.0 - p) + two_m * tail) / visits;
  } else {
    const double num =
      (1.0 - std::pow(2.0 * p, m + 1)) * (1.0 - p) + two_m * tail * (1.0 - 2.0 * p);
    ratio = num / ((1.0 - 2.0 * p) * visits);
  }
  return 2.0 / (w0 * ratio + 1.0);
}

double
wifi_tau(int w0, int m, int hold_stages, double p_w)
{
  if (hold_stages == 1)
    return wifi_tau(w0, m, p_w);
  // Same shape as the LBT chain with hold_stages in place of the retry limit.
  return laa_tau(w0, m, hold_stages, p_w);
}

double
laa_tau(int w0, int m, int e_l, double p_l)
{
  check_args(w0, m, e_l, p_l);
  if (near_one(p_l))
    return series_tau(w0, m, e_l, p_l);
  const double p = p_l;
  const double visits = 1.0 - std::pow(p, m + e_l + 1);
  double growth;
  if (near_pole(p))
    growth = (1.0 - p) * doubling_series(p, m) / visits;
  else
    growth = (1.0 - p) * (1.0 - std::pow(2.0 * p, m + 1)) / ((1.0 - 2.0 * p) * visits);
  const double held = std::ldexp((std::pow(p, m + 1) - std::pow(p, m + e_l + 1)) / visits, m);
  return 2.0 / (w0 * (growth + held) + 1.0);
}

StationaryDistribution
wifi_stationary(int w0, int m, double p_w)
{
  check_args(w0, m, 1, p_w);
  return materialize(ChainKind::wifi, w0, m, 1, wifi_head_probability(w0, m, p_w), p_w);
}

StationaryDistribution
wifi_stationary(int w0, int m, int hold_stages, double p_w)
{
  if (hold_stages == 1)
    return wifi_stationary(w0, m, p_w);
  check_args(w0, m, hold_stages, p_w);
  return materialize(ChainKind::wifi, w0, m, hold_stages,
                     head_probability(w0, m, hold_stages, p_w), p_w);
}

StationaryDistribution
laa_stationary(int w0, int m, int e_l, double p_l)
{
  check_args(w0, m, e_l, p_l);
  return materialize(ChainKind::laa, w0, m, e_l, head_probability(w0, m, e_l, p_l), p_l);
}

} // namespace coex::markov
