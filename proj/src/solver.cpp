#include "coex/solver.hpp"

#include "coex/markov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace coex {

void
SolverConfig::validate() const
{
  if (!(tolerance > 0.0))
    throw InputError("solver.tolerance", "must be positive");
  if (max_iterations < 1)
    throw InputError("solver.max_iterations", "must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0))
    throw InputError("solver.damping", "must be in (0, 1]");
}

SolverError::SolverError(const std::string& what, Solution last)
  : std::runtime_error(what), m_last(last)
{
}

CollisionProbabilities
collision_probabilities(const Scenario& s, double tau_w, double tau_l)
{
  CollisionProbabilities c{0.0, 0.0};
  const double laa_active = 1.0 - std::pow(1.0 - tau_l, s.n_laa);
  const double wifi_active = 1.0 - std::pow(1.0 - tau_w, s.n_wifi);
  if (s.n_wifi > 0) {
    const double others_quiet = std::pow(1.0 - tau_w, s.n_wifi - 1);
    c.p_w = laa_active * s.p_dw * others_quiet + 1.0 - others_quiet;
  }
  if (s.n_laa > 0) {
    const double others_quiet = std::pow(1.0 - tau_l, s.n_laa - 1);
    c.p_l = wifi_active * s.p_dl * others_quiet + 1.0 - others_quiet;
  }
  return c;
}

namespace {

struct Taus
{
  double w;
  double l;
};

/// One pass through the collision equations and both chains. `s` must
/// already be the effective scenario.
Taus
apply_map(const Scenario& s, double tau_w, double tau_l)
{
  const auto c = collision_probabilities(s, tau_w, tau_l);
  Taus next{0.0, 0.0};
  if (s.n_wifi > 0)
    next.w = markov::wifi_tau(s.wifi.w0, s.wifi.m, s.wifi.hold_stages, c.p_w);
  if (s.n_laa > 0)
    next.l = markov::laa_tau(s.laa.w0, s.laa.m, s.laa.retry_limit, c.p_l);
  return next;
}

double
residual_of(const Scenario& s, double tau_w, double tau_l)
{
  const Taus f = apply_map(s, tau_w, tau_l);
  return std::max(std::abs(f.w - tau_w), std::abs(f.l - tau_l));
}

Solution
make_solution(const Scenario& s, double tau_w, double tau_l, int iterations)
{
  const auto c = collision_probabilities(s, tau_w, tau_l);
  return {tau_w, tau_l, c.p_w, c.p_l, residual_of(s, tau_w, tau_l), iterations};
}

/// Root of a function positive at lo and non-positive at hi.
template <typename F>
double
bisect(F&& f, double lo, double hi, int& evaluations)
{
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    ++evaluations;
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Both taus are bounded by their collision-free value 2 / (W0 + 1).
double
wifi_tau_max(const Scenario& s)
{
  return s.n_wifi > 0 ? 2.0 / (s.wifi.w0 + 1.0) : 0.0;
}

double
laa_tau_max(const Scenario& s)
{
  return s.n_laa > 0 ? 2.0 / (s.laa.w0 + 1.0) : 0.0;
}

double
inner_laa_tau(const Scenario& s, double tau_w, int& evaluations)
{
  if (s.n_laa == 0)
    return 0.0;
  return bisect([&](double tl) { return apply_map(s, tau_w, tl).l - tl; }, 0.0,
                laa_tau_max(s), evaluations);
}

double
outer_residual(const Scenario& s, double tau_w, int& evaluations)
{
  const double tl = inner_laa_tau(s, tau_w, evaluations);
  return apply_map(s, tau_w, tl).w - tau_w;
}

Solution
solve_by_bisection(const Scenario& s, int iterations_so_far)
{
  int evaluations = iterations_so_far;
  double tw = 0.0;
  if (s.n_wifi > 0)
    tw = bisect([&](double t) { return outer_residual(s, t, evaluations); }, 0.0,
                wifi_tau_max(s), evaluations);
  const double tl = inner_laa_tau(s, tw, evaluations);
  return make_solution(s, tw, tl, evaluations);
}

Solution
damped_iteration(const Scenario& s, const SolverConfig& cfg, bool& stalled)
{
  double tw = wifi_tau_max(s);
  double tl = laa_tau_max(s);
  double checkpoint = -1.0;
  double r = 0.0;
  stalled = false;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const Taus f = apply_map(s, tw, tl);
    r = std::max(std::abs(f.w - tw), std::abs(f.l - tl));
    if (r <= cfg.tolerance)
      return make_solution(s, tw, tl, it);
    if (it % 100 == 0) {
      if (checkpoint >= 0.0 && r > 0.5 * checkpoint) {
        stalled = true;
        return make_solution(s, tw, tl, it);
      }
      checkpoint = r;
    }
    tw += cfg.damping * (f.w - tw);
    tl += cfg.damping * (f.l - tl);
  }
  return make_solution(s, tw, tl, cfg.max_iterations);
}

} // namespace

double
fixed_point_residual(const Scenario& s, double tau_w, double tau_l)
{
  return residual_of(effective(s), tau_w, tau_l);
}

Solution
solve_coexistence(const Scenario& raw, const SolverConfig& cfg)
{
  raw.validate();
  cfg.validate();
  const Scenario s = effective(raw);

  std::optional<Solution> last;
  try {
    bool stalled = false;
    Solution sol = damped_iteration(s, cfg, stalled);
    if (sol.residual <= cfg.tolerance)
      return sol;
    last = sol;
    if (stalled) {
      sol = solve_by_bisection(s, sol.iterations);
      if (sol.residual <= cfg.tolerance)
        return sol;
      last = sol;
    }
  } catch (const std::domain_error& e) {
    throw SolverError(std::string("fixed point left the chain domain: ") + e.what(),
                      last.value_or(Solution{}));
  }
  throw SolverError("no fixed point within tolerance after " +
                      std::to_string(last->iterations) + " iterations (residual " +
                      std::to_string(last->residual) + ")",
                    *last);
}

Solution
solve_wifi_only(int n, int w0, int m, const SolverConfig& cfg, int hold_stages)
{
  if (n < 1)
    throw InputError("nodes.wifi", "a Wi-Fi-only network needs at least one AP");
  Scenario s;
  s.n_wifi = n;
  s.n_laa = 0;
  s.wifi.w0 = w0;
  s.wifi.m = m;
  s.wifi.hold_stages = hold_stages;
  return solve_coexistence(s, cfg);
}

std::vector<Solution>
scan_fixed_points(const Scenario& raw, int resolution)
{
  raw.validate();
  const Scenario s = effective(raw);
  std::vector<Solution> roots;
  int evaluations = 0;
  if (s.n_wifi == 0) {
    roots.push_back(make_solution(s, 0.0, inner_laa_tau(s, 0.0, evaluations), evaluations));
    return roots;
  }
  const double hi = wifi_tau_max(s);
  double prev_x = 0.0;
  double prev_h = outer_residual(s, prev_x, evaluations);
  for (int i = 1; i <= resolution; ++i) {
    const double x = hi * i / resolution;
    const double h = outer_residual(s, x, evaluations);
    if (prev_h > 0.0 && h <= 0.0) {
      const double tw = bisect([&](double t) { return outer_residual(s, t, evaluations); },
                               prev_x, x, evaluations);
      roots.push_back(make_solution(s, tw, inner_laa_tau(s, tw, evaluations), evaluations));
    } else if (prev_h <= 0.0 && h > 0.0) {
      const double tw = bisect([&](double t) { return -outer_residual(s, t, evaluations); },
                               prev_x, x, evaluations);
      roots.push_back(make_solution(s, tw, inner_laa_tau(s, tw, evaluations), evaluations));
    }
    prev_x = x;
    prev_h = h;
  }
  return roots;
}

} // namespace coex
