#ifndef COEX_CLI_REPORT_HPP
#define COEX_CLI_REPORT_HPP

#include "coex/core.hpp"
#include "coex/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coex::cli {

/// First line of every CSV we write. Excluded from reproducibility checks.
constexpr std::string_view kVersionLine = "# coexsim 1.0.0";

enum class Engine
{
  analytic,
  simulate,
  both,
};

/// "analytic" | "simulate" | "both"; InputError otherwise.
Engine parse_engine(std::string_view name);

struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Cell of `row` under column `name`; throws std::out_of_range.
  const std::string& at(std::size_t row, std::string_view name) const;
};

/// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_field(std::string_view text);

/// Shortest stable text for a double ("%.10g"-style).
std::string format_number(double x);

/// Version line, header, then rows; CRLF-free.
void write_csv(std::ostream& out, const Table& table);

struct RunOptions
{
  Engine engine = Engine::analytic;
  SolverConfig solver;
  std::uint64_t seed = 1;
  std::uint64_t horizon_events = 2'000'000;
  std::uint64_t warmup_events = 10'000;
  std::ostream* trace = nullptr; ///< per-event simulator trace, if wanted
};

/// One row per engine with the effective parameters, the fixed point (or
/// its measured counterpart) and the throughput of both networks.
/// Throws SolverError when the analytic engine does not converge.
Table run_scenario(const Scenario& s, const RunOptions& opts);

Table run_scenario(const std::filesystem::path& path, const RunOptions& opts);

} // namespace coex::cli

#endif
