#ifndef COEX_SOLVER_HPP
#define COEX_SOLVER_HPP

#include "coex/core.hpp"

#include <stdexcept>
#include <vector>

namespace coex {

struct SolverConfig
{
  double tolerance = 1e-10; ///< on the max absolute fixed-point residual
  int max_iterations = 10000;
  double damping = 0.5; ///< weight of the new iterate, in (0, 1]

  void validate() const;
};

/// Raised when no fixed point is found; keeps the last iterate so callers
/// can report how far off it was.
class SolverError : public std::runtime_error
{
public:
  SolverError(const std::string& what, Solution last);

  const Solution& last_iterate() const noexcept { return m_last; }

private:
  Solution m_last;
};

struct CollisionProbabilities
{
  double p_w;
  double p_l;
};

/// Collision probability seen by one Wi-Fi AP and by one LAA eNB given both
/// per-slot transmission probabilities. The cross-network term is scaled by
/// the detection probabilities p_dw / p_dl; with both at 1 this is the plain
/// "anyone else transmits" probability. An empty network reports 0.
CollisionProbabilities collision_probabilities(const Scenario& s, double tau_w, double tau_l);

/// Largest change of (tau_w, tau_l) when pushed once through the collision
/// equations and the two chains.
double fixed_point_residual(const Scenario& s, double tau_w, double tau_l);

/**
 * Jointly solves both chains and the coupled collision probabilities.
 *
 * Damped fixed-point iteration from the collision-free transmission
 * probabilities 2 / (W0 + 1). If the residual fails to halve over 100
 * iterations the solver switches to nested bisection (inner: tau_l for a
 * given tau_w, outer: tau_w). The comparison-mode overrides of `effective`
 * are applied first.
 *
 * Throws SolverError when neither route reaches cfg.tolerance.
 */
Solution solve_coexistence(const Scenario& s, const SolverConfig& cfg = {});

/// Wi-Fi-only network of n APs (the classic single-technology fixed point).
Solution solve_wifi_only(int n, int w0, int m, const SolverConfig& cfg = {}, int hold_stages = 1);

/// Every fixed point found by scanning tau_w over `resolution` cells and
/// bisecting each sign change of the nested residual. Used to check that a
/// sweep point has a single solution.
std::vector<Solution> scan_fixed_points(const Scenario& s, int resolution = 400);

} // namespace coex

#endif
