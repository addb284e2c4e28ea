#include "coex/cli/report.hpp"

#include "coex/mcsim.hpp"
#include "coex/scenario_io.hpp"
#include "coex/throughput.hpp"

#include "params.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace coex::cli {

Engine
parse_engine(std::string_view name)
{
  if (name == "analytic")
    return Engine::analytic;
  if (name == "simulate")
    return Engine::simulate;
  if (name == "both")
    return Engine::both;
  throw InputError("engine", "expected analytic, simulate or both");
}

const std::string&
Table::at(std::size_t row, std::string_view name) const
{
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw std::out_of_range("no column " + std::string(name));
  return rows.at(row).at(static_cast<std::size_t>(it - header.begin()));
}

std::string
csv_field(std::string_view text)
{
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string
format_number(double x)
{
  return fmt::format("{:.10g}", x);
}

void
write_csv(std::ostream& out, const Table& table)
{
  out << kVersionLine << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i)
        out << ',';
      out << csv_field(cells[i]);
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows)
    line(r);
}

void
append_parameters(Row& row, const Scenario& eff)
{
  const WifiParams& w = eff.wifi;
  const LaaParams& l = eff.laa;
  row.add("n_wifi", eff.n_wifi);
  row.add("n_laa", eff.n_laa);
  row.add("comparison_mode", eff.comparison_mode ? "true" : "false");
  row.add("wifi_w0", w.w0);
  row.add("wifi_m", w.m);
  row.add("wifi_hold_stages", w.hold_stages);
  row.add("wifi_payload_bytes", w.payload_bytes);
  row.add("wifi_data_rate_mbps", w.data_rate_mbps);
  row.add("wifi_control_rate_mbps", w.control_rate_mbps);
  row.add("wifi_phy_header_us", w.phy_header_us);
  row.add("wifi_mac_header_bytes", w.mac_header_bytes);
  row.add("wifi_ack_bytes", w.ack_bytes);
  row.add("wifi_difs_us", w.difs_us);
  row.add("wifi_sifs_us", w.sifs_us);
  row.add("wifi_slot_us", w.slot_us);
  row.add("wifi_prop_delay_us", w.prop_delay_us);
  row.add("laa_w0", l.w0);
  row.add("laa_m", l.m);
  row.add("laa_retry_limit", l.retry_limit);
  row.add("laa_defer_us", l.defer_us);
  row.add("laa_txop_us", l.txop_us);
  row.add("laa_next_tx_delay_us", l.next_tx_delay_us);
  row.add("laa_data_rate_mbps", l.data_rate_mbps);
  row.add("laa_pdcch_fraction", l.pdcch_fraction);
  row.add("p_dw", eff.p_dw);
  row.add("p_dl", eff.p_dl);
}

namespace {

void
append_report(Row& row, const ThroughputReport& r)
{
  row.add("p_trw", r.p_trw);
  row.add("p_sw", r.p_sw);
  row.add("p_trl", r.p_trl);
  row.add("p_sl", r.p_sl);
  row.add("t_sw_us", r.t_sw);
  row.add("t_cw_us", r.t_cw);
  row.add("t_sl_us", r.t_sl);
  row.add("t_cl_us", r.t_cl);
  row.add("t_cc_us", r.t_cc);
  row.add("t_e_us", r.t_e);
  row.add("tput_wifi_mbps", r.tput_wifi_mbps);
  row.add("tput_laa_mbps", r.tput_laa_mbps);
  row.add("tput_total_mbps", r.total_mbps());
  row.add("per_user_wifi_mbps", r.per_user_wifi_mbps);
  row.add("per_user_laa_mbps", r.per_user_laa_mbps);
}

Row
analytic_row(const Scenario& eff, const RunOptions& opts)
{
  const Solution sol = solve_coexistence(eff, opts.solver);
  const ThroughputReport rep = coexistence_throughput(eff, sol);
  Row row;
  row.add("scenario", eff.name);
  row.add("engine", "analytic");
  append_parameters(row, eff);
  row.add("tau_w", sol.tau_w);
  row.add("tau_l", sol.tau_l);
  row.add("p_w", sol.p_w);
  row.add("p_l", sol.p_l);
  row.add("residual", sol.residual);
  row.add("iterations", sol.iterations);
  append_report(row, rep);
  row.add("tput_wifi_stderr", "");
  row.add("tput_laa_stderr", "");
  row.add("tau_w_stderr", "");
  row.add("tau_l_stderr", "");
  row.add("seed", "");
  row.add("events", "");
  return row;
}

Row
simulation_row(const Scenario& eff, const RunOptions& opts)
{
  sim::SimConfig cfg;
  cfg.scenario = eff;
  cfg.seed = opts.seed;
  cfg.horizon_events = opts.horizon_events;
  cfg.warmup_events = opts.warmup_events;
  const sim::SimReport r = sim::simulate_with_detection(cfg, opts.trace);

  // Event probabilities are not estimated; durations are the model's.
  ThroughputReport rep = coexistence_throughput(eff, Solution{});
  rep.tput_wifi_mbps = r.tput_wifi_mbps.value;
  rep.tput_laa_mbps = r.tput_laa_mbps.value;
  rep.per_user_wifi_mbps = per_user(rep.tput_wifi_mbps, eff.n_wifi);
  rep.per_user_laa_mbps = per_user(rep.tput_laa_mbps, eff.n_laa);
  rep.t_e = r.simulated_time_us / static_cast<double>(r.measured_events);

  Row row;
  row.add("scenario", eff.name);
  row.add("engine", "simulate");
  append_parameters(row, eff);
  row.add("tau_w", r.measured_tau_w.value);
  row.add("tau_l", r.measured_tau_l.value);
  row.add("p_w", r.measured_p_w.value);
  row.add("p_l", r.measured_p_l.value);
  row.add("residual", "");
  row.add("iterations", "");
  append_report(row, rep);
  for (const char* blank : {"p_trw", "p_sw", "p_trl", "p_sl"})
    row.set(blank, "");
  row.add("tput_wifi_stderr", r.tput_wifi_mbps.std_error);
  row.add("tput_laa_stderr", r.tput_laa_mbps.std_error);
  row.add("tau_w_stderr", r.measured_tau_w.std_error);
  row.add("tau_l_stderr", r.measured_tau_l.std_error);
  row.add("seed", std::to_string(opts.seed));
  row.add("events", std::to_string(r.measured_events));
  return row;
}

} // namespace

Table
run_scenario(const Scenario& s, const RunOptions& opts)
{
  s.validate();
  opts.solver.validate();
  const Scenario eff = effective(s);
  std::vector<Row> rows;
  if (opts.engine != Engine::simulate)
    rows.push_back(analytic_row(eff, opts));
  if (opts.engine != Engine::analytic)
    rows.push_back(simulation_row(eff, opts));
  return to_table(rows);
}

Table
run_scenario(const std::filesystem::path& path, const RunOptions& opts)
{
  return run_scenario(load_scenario(path), opts);
}

} // namespace coex::cli
