// coexsim: batch front-end for the Wi-Fi / LAA coexistence model.
//
// Exit status: 0 success, 2 bad input (the message names the field),
// 3 numerical failure (no convergence; the residual is reported).

#include "coex/cli/report.hpp"
#include "coex/cli/sweep.hpp"
#include "coex/ed.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

/// Relative --out paths land under $COEXSIM_OUTPUT_DIR when it is set.
std::filesystem::path
output_path(const std::string& out)
{
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("COEXSIM_OUTPUT_DIR"); dir && *dir)
      p = std::filesystem::path(dir) / p;
  return p;
}

void
emit(const coex::cli::Table& table, const std::string& out)
{
  if (out.empty() || out == "-") {
    coex::cli::write_csv(std::cout, table);
    return;
  }
  const auto path = output_path(out);
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw coex::InputError("out", "cannot write " + path.string());
  coex::cli::write_csv(f, table);
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Saturation throughput of coexisting Wi-Fi and LAA networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(coex::cli::kVersionLine.substr(2)));

  coex::SolverConfig solver;
  auto add_solver_flags = [&solver](CLI::App* cmd) {
    cmd->add_option("--tolerance", solver.tolerance, "fixed-point residual tolerance")
      ->capture_default_str();
    cmd->add_option("--max-iterations", solver.max_iterations)->capture_default_str();
    cmd->add_option("--damping", solver.damping, "weight of the new iterate")
      ->capture_default_str();
  };

  // run
  auto* run = app.add_subcommand("run", "evaluate one scenario file");
  std::string scenario_path, engine_name = "analytic", run_out, trace_path;
  coex::cli::RunOptions opts;
  run->add_option("scenario", scenario_path, "scenario YAML file")->required();
  run->add_option("-e,--engine", engine_name, "analytic | simulate | both")->capture_default_str();
  run->add_option("--seed", opts.seed)->capture_default_str();
  run->add_option("--horizon", opts.horizon_events, "simulated events after warm-up")
    ->capture_default_str();
  run->add_option("--warmup", opts.warmup_events)->capture_default_str();
  run->add_option("-o,--out", run_out, "CSV output path (default stdout)");
  run->add_option("--trace", trace_path, "per-event simulator trace CSV");
  add_solver_flags(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep");
  std::string sweep_path, sweep_out;
  unsigned threads = 0;
  sweep->add_option("spec", sweep_path, "sweep YAML file")->required();
  sweep->add_option("-o,--out", sweep_out, "CSV output path (default stdout)");
  sweep->add_option("-j,--threads", threads, "worker threads (0 = all cores)");
  add_solver_flags(sweep);

  // ed
  auto* ed = app.add_subcommand("ed", "energy-detector probability of detection");
  coex::ed::EdConfig edc;
  std::optional<double> snr;
  ed->add_option("--threshold", edc.threshold_dbm, "dBm")->capture_default_str();
  ed->add_option("--signal", edc.signal_power_dbm, "dBm")->capture_default_str();
  ed->add_option("--snr", snr, "dB, overrides --signal");
  ed->add_option("--noise", edc.noise_power_dbm, "dBm")->capture_default_str();
  ed->add_option("--samples", edc.samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) {
      opts.engine = coex::cli::parse_engine(engine_name);
      opts.solver = solver;
      std::ofstream trace;
      if (!trace_path.empty()) {
        trace.open(output_path(trace_path), std::ios::binary);
        if (!trace)
          throw coex::InputError("trace", "cannot write " + trace_path);
        opts.trace = &trace;
      }
      emit(coex::cli::run_scenario(std::filesystem::path(scenario_path), opts), run_out);
    } else if (*sweep) {
      const auto spec = coex::cli::load_sweep(sweep_path);
      const auto result = coex::cli::run_sweep(spec, solver, threads);
      emit(result.table, sweep_out);
      for (const auto& note : result.notes)
        std::cerr << "note: " << note << '\n';
      if (!result.all_converged) {
        std::cerr << "error: at least one sweep point did not converge\n";
        return kExitNumeric;
      }
    } else if (*ed) {
      if (snr)
        edc = coex::ed::EdConfig::from_snr(edc.threshold_dbm, *snr, edc.noise_power_dbm,
                                           edc.samples);
      std::cout << fmt::format("{:.6f}\n", coex::ed::detection_probability(edc));
    }
  } catch (const coex::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const coex::SolverError& e) {
    std::cerr << "error: " << e.what()
              << fmt::format(" (residual {:.3e} after {} iterations)\n",
                             e.last_iterate().residual, e.last_iterate().iterations);
    return kExitNumeric;
  }
  return 0;
}
