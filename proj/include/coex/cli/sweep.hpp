#ifndef COEX_CLI_SWEEP_HPP
#define COEX_CLI_SWEEP_HPP

#include "coex/cli/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace coex::cli {

enum class SweepAxis
{
  total_nodes,    ///< N split evenly, n_wifi = n_laa = N / 2
  node_split,     ///< n_wifi = value, n_laa = N - value with N from the base
  retry_limit,    ///< laa.retry_limit = value
  detection_wifi, ///< p_dw = value
  detection_laa,  ///< p_dl = value
};

SweepAxis parse_axis(std::string_view name);
const char* to_string(SweepAxis axis);

/**
 * Sweep files are YAML:
 *
 *   axis: total_nodes
 *   values: [2, 4, 6]             # or range: {from: 2, to: 20, step: 2}
 *   base: fig7.yaml               # path relative to this file, or an
 *                                 # inline scenario mapping
 */
struct SweepSpec
{
  SweepAxis axis = SweepAxis::total_nodes;
  std::vector<double> values;
  Scenario base;

  /// Every value legal for the axis; throws InputError otherwise.
  void validate() const;
};

SweepSpec parse_sweep(const std::string& yaml_text, const std::filesystem::path& base_dir);
SweepSpec load_sweep(const std::filesystem::path& path);

/// The scenario evaluated at one axis value.
Scenario sweep_point(const SweepSpec& spec, double value);

struct SweepResult
{
  Table table;
  bool all_converged = true;
  /// Human-readable remarks, e.g. every root of a point with several.
  std::vector<std::string> notes;
};

/// Evaluates every point (in parallel) and returns rows in axis order. Each
/// row carries the Wi-Fi-only baseline with N = n_wifi + n_laa APs next to
/// the coexistence result.
SweepResult run_sweep(const SweepSpec& spec, const SolverConfig& cfg, unsigned threads = 0);

} // namespace coex::cli

#endif
