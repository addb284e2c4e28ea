#ifndef COEX_TESTS_ORACLES_HPP
#define COEX_TESTS_ORACLES_HPP

// Independent reference computations. Nothing here calls into the library's
// closed forms: chains are built state by state, fixed points are found by
// plain bisection and event weights by enumerating who transmits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using real = long double;

/// Stage windows of a chain with `extra` held stages after stage m.
inline std::vector<int>
windows(int w0, int m, int extra)
{
  std::vector<int> w;
  for (int j = 0; j <= m + extra; ++j)
    w.push_back(w0 << std::min(j, m));
  return w;
}

/// Stationary distribution of the backoff chain, solved as a dense linear
/// system pi (P - I) = 0 with sum(pi) = 1. Only for small chains.
///
/// Transitions: (j, k) -> (j, k - 1) for k > 0; (j, 0) -> (0, u) with
/// probability (1 - p) / W0 and -> (j + 1, u) with p / W_{j+1}; the last
/// stage always returns to stage 0.
inline std::vector<std::vector<real>>
dense_stationary(int w0, int m, int extra, real p)
{
  const auto w = windows(w0, m, extra);
  std::vector<std::size_t> offset;
  std::size_t n = 0;
  for (int x : w) {
    offset.push_back(n);
    n += static_cast<std::size_t>(x);
  }
  if (n > 600)
    throw std::invalid_argument("chain too large for the dense oracle");
  const int last = m + extra;

  // Rows of A are the balance equations (columns of P^T - I); the last
  // row is replaced by normalization.
  std::vector<std::vector<real>> a(n, std::vector<real>(n + 1, 0.0L));
  auto idx = [&](int j, int k) { return offset[static_cast<std::size_t>(j)] + static_cast<std::size_t>(k); };
  auto add = [&](std::size_t from, std::size_t to, real prob) { a[to][from] += prob; };
  for (int j = 0; j <= last; ++j) {
    for (int k = 1; k < w[static_cast<std::size_t>(j)]; ++k)
      add(idx(j, k), idx(j, k - 1), 1.0L);
    const std::size_t head = idx(j, 0);
    const real reset = j == last ? 1.0L : 1.0L - p;
    for (int u = 0; u < w0; ++u)
      add(head, idx(0, u), reset / w0);
    if (j < last) {
      const int wn = w[static_cast<std::size_t>(j + 1)];
      for (int u = 0; u < wn; ++u)
        add(head, idx(j + 1, u), p / wn);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    a[i][i] -= 1.0L;
  for (std::size_t c = 0; c <= n; ++c)
    a[n - 1][c] = 1.0L;

  // Gaussian elimination with partial pivoting.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c]))
        piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0L)
        continue;
      const real f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k)
        a[r][k] -= f * a[c][k];
    }
  }
  std::vector<std::vector<real>> b;
  for (int j = 0; j <= last; ++j) {
    b.emplace_back();
    for (int k = 0; k < w[static_cast<std::size_t>(j)]; ++k) {
      const std::size_t i = idx(j, k);
      b.back().push_back(a[i][n] / a[i][i]);
    }
  }
  return b;
}

/// Renewal argument: stage j is entered with probability p^j per cycle and
/// costs (W_j + 1) / 2 slots on average including the transmission slot, so
/// tau = sum p^j / sum p^j (W_j + 1) / 2.
inline real
stage_sum_tau(int w0, int m, int extra, real p)
{
  real visits = 0.0L;
  real slots = 0.0L;
  real pj = 1.0L;
  for (int x : windows(w0, m, extra)) {
    visits += pj;
    slots += pj * (x + 1) / 2.0L;
    pj *= p;
  }
  return visits / slots;
}

template <typename F>
real
bisect(F&& f, real lo, real hi)
{
  real flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-18L; ++i) {
    const real mid = (lo + hi) / 2;
    const real fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Single-technology fixed point: find p in [0, 1) with
/// p = 1 - (1 - tau(p))^(n - 1). Returns (p, tau).
inline std::pair<real, real>
single_technology(int n, int w0, int m, int extra)
{
  if (n == 1)
    return {0.0L, stage_sum_tau(w0, m, extra, 0.0L)};
  auto g = [&](real p) { return 1.0L - std::pow(1.0L - stage_sum_tau(w0, m, extra, p), n - 1) - p; };
  const real p = bisect(g, 0.0L, 1.0L - 1e-15L);
  return {p, stage_sum_tau(w0, m, extra, p)};
}

/// Probability of each event class in a slot, enumerating every subset of
/// transmitters. Order: idle, wifi success, laa success, wifi collision,
/// laa collision, cross collision.
inline std::vector<real>
enumerate_events(int n_w, int n_l, real tau_w, real tau_l)
{
  std::vector<real> out(6, 0.0L);
  const int n = n_w + n_l;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    real prob = 1.0L;
    int kw = 0;
    int kl = 0;
    for (int i = 0; i < n; ++i) {
      const bool on = (mask >> i) & 1u;
      const real t = i < n_w ? tau_w : tau_l;
      prob *= on ? t : 1.0L - t;
      if (on)
        (i < n_w ? kw : kl)++;
    }
    int cls;
    if (kw == 0 && kl == 0)
      cls = 0;
    else if (kw == 1 && kl == 0)
      cls = 1;
    else if (kw == 0 && kl == 1)
      cls = 2;
    else if (kl == 0)
      cls = 3;
    else if (kw == 0)
      cls = 4;
    else
      cls = 5;
    out[static_cast<std::size_t>(cls)] += prob;
  }
  return out;
}

/// Frame timing written out from the parameter table, independent of the
/// library's duration code.
struct Timing
{
  real slot = 9, difs = 34, sifs = 16, delta = 0.1, phy = 20;
  real payload_bytes = 2048, mac_bytes = 34, ack_bytes = 14;
  real r_w = 9, r_ack = 6;
  real txop = 8000, d_lte = 500, r_l = 7.8, pdcch = 13.0L / 14.0L;

  real psize() const { return 8 * payload_bytes / r_w; }
  real t_sw() const { return 8 * mac_bytes / r_w + phy + psize() + sifs + delta + 8 * ack_bytes / r_ack + difs + delta; }
  real t_cw() const { return 8 * mac_bytes / r_w + phy + psize() + difs + delta; }
  real t_l() const { return txop + d_lte; }
  real t_cc() const { return std::max(t_cw(), t_l()); }
};

/// Throughputs (Wi-Fi, LAA) in Mbps from enumerated event weights.
inline std::pair<real, real>
enumerated_throughput(int n_w, int n_l, real tau_w, real tau_l, const Timing& t)
{
  const auto e = enumerate_events(n_w, n_l, tau_w, tau_l);
  const real te = e[0] * t.slot + e[1] * t.t_sw() + e[2] * t.t_l() + e[3] * t.t_cw() +
                  e[4] * t.t_l() + e[5] * t.t_cc();
  return {e[1] * t.psize() * t.r_w / te, e[2] * t.pdcch * t.txop * t.r_l / te};
}

/// Bianchi's saturation throughput of n stations, three-term slot time.
inline real
bianchi_throughput(int n, real tau, const Timing& t)
{
  const real ptr = 1.0L - std::pow(1.0L - tau, n);
  const real ps = n * tau * std::pow(1.0L - tau, n - 1) / ptr;
  const real te = (1 - ptr) * t.slot + ptr * ps * t.t_sw() + ptr * (1 - ps) * t.t_cw();
  return ptr * ps * t.psize() * t.r_w / te;
}

/// Q(x) by Simpson integration of the normal density over [x, x + 40].
inline real
gaussian_tail(real x)
{
  const int n = 200000;
  const real h = 40.0L / n;
  real s = 0.0L;
  for (int i = 0; i <= n; ++i) {
    const real u = x + i * h;
    const real f = std::exp(-u * u / 2);
    s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
  }
  return s * h / 3 / std::sqrt(2 * 3.14159265358979323846264338327950288L);
}

} // namespace oracle

#endif
