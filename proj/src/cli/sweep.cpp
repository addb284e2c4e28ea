#include "coex/cli/sweep.hpp"

#include "coex/scenario_io.hpp"
#include "coex/throughput.hpp"

#include "params.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace coex::cli {

SweepAxis
parse_axis(std::string_view name)
{
  for (SweepAxis a : {SweepAxis::total_nodes, SweepAxis::node_split, SweepAxis::retry_limit,
                      SweepAxis::detection_wifi, SweepAxis::detection_laa})
    if (name == to_string(a))
      return a;
  throw InputError("axis", "unknown axis '" + std::string(name) + "'");
}

const char*
to_string(SweepAxis axis)
{
  switch (axis) {
    case SweepAxis::total_nodes:
      return "total_nodes";
    case SweepAxis::node_split:
      return "node_split";
    case SweepAxis::retry_limit:
      return "retry_limit";
    case SweepAxis::detection_wifi:
      return "detection_wifi";
    case SweepAxis::detection_laa:
      return "detection_laa";
  }
  return "?";
}

namespace {

bool
is_integer(double v)
{
  return std::isfinite(v) && v == std::floor(v);
}

std::string
value_field(std::size_t i)
{
  return "values[" + std::to_string(i) + "]";
}

} // namespace

void
SweepSpec::validate() const
{
  base.validate();
  if (values.empty())
    throw InputError("values", "must not be empty");
  const int total = base.n_wifi + base.n_laa;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    switch (axis) {
      case SweepAxis::total_nodes:
        if (!is_integer(v) || v < 2 || static_cast<long>(v) % 2 != 0)
          throw InputError(value_field(i), "total_nodes needs an even integer >= 2");
        break;
      case SweepAxis::node_split:
        if (!is_integer(v) || v < 0 || v > total)
          throw InputError(value_field(i),
                           "node_split needs an integer in [0, " + std::to_string(total) + "]");
        break;
      case SweepAxis::retry_limit:
        if (!is_integer(v) || v < 0 || v > kMaxRetryLimit)
          throw InputError(value_field(i), "retry_limit needs an integer in [0, 8]");
        break;
      case SweepAxis::detection_wifi:
      case SweepAxis::detection_laa:
        if (!(v >= 0.0 && v <= 1.0))
          throw InputError(value_field(i), "detection probability must lie in [0, 1]");
        break;
    }
  }
}

Scenario
sweep_point(const SweepSpec& spec, double value)
{
  Scenario s = spec.base;
  const int v = static_cast<int>(std::lround(value));
  switch (spec.axis) {
    case SweepAxis::total_nodes:
      s.n_wifi = v / 2;
      s.n_laa = v / 2;
      break;
    case SweepAxis::node_split: {
      const int total = s.n_wifi + s.n_laa;
      s.n_wifi = v;
      s.n_laa = total - v;
      break;
    }
    case SweepAxis::retry_limit:
      s.laa.retry_limit = v;
      break;
    case SweepAxis::detection_wifi:
      s.p_dw = value;
      break;
    case SweepAxis::detection_laa:
      s.p_dl = value;
      break;
  }
  return s;
}

namespace {

double
scalar(const YAML::Node& n, const std::string& field)
{
  if (!n.IsScalar())
    throw InputError(field, "expected a number");
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw InputError(field, "cannot convert '" + n.Scalar() + "'");
  }
}

std::vector<double>
parse_range(const YAML::Node& r)
{
  if (!r.IsMap())
    throw InputError("range", "expected {from, to, step}");
  for (const auto& kv : r) {
    const auto key = kv.first.as<std::string>();
    if (key != "from" && key != "to" && key != "step")
      throw InputError("range." + key, "unknown key");
  }
  for (const char* k : {"from", "to", "step"})
    if (!r[k])
      throw InputError(std::string("range.") + k, "missing");
  const double from = scalar(r["from"], "range.from");
  const double to = scalar(r["to"], "range.to");
  const double step = scalar(r["step"], "range.step");
  if (!(step > 0.0))
    throw InputError("range.step", "must be positive");
  if (to < from)
    throw InputError("range.to", "must not be below range.from");
  std::vector<double> out;
  // Index-based so that 0.1 steps do not accumulate drift.
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i)
    out.push_back(from + static_cast<double>(i) * step);
  return out;
}

} // namespace

SweepSpec
parse_sweep(const std::string& yaml_text, const std::filesystem::path& base_dir)
{
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw InputError("sweep", std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap())
    throw InputError("sweep", "document must be a mapping");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "axis" && key != "values" && key != "range" && key != "base")
      throw InputError(key, "unknown key");
  }

  SweepSpec spec;
  if (!root["axis"])
    throw InputError("axis", "missing");
  spec.axis = parse_axis(root["axis"].as<std::string>());

  if (root["values"] && root["range"])
    throw InputError("values", "give either values or range, not both");
  if (const YAML::Node v = root["values"]) {
    if (!v.IsSequence())
      throw InputError("values", "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i)
      spec.values.push_back(scalar(v[i], value_field(i)));
  } else if (const YAML::Node r = root["range"]) {
    spec.values = parse_range(r);
  } else {
    throw InputError("values", "missing");
  }

  const YAML::Node b = root["base"];
  if (!b)
    throw InputError("base", "missing");
  if (b.IsScalar()) {
    const std::filesystem::path p = b.as<std::string>();
    spec.base = load_scenario(p.is_absolute() ? p : base_dir / p);
  } else {
    YAML::Emitter e;
    e << b;
    spec.base = parse_scenario(e.c_str());
  }
  spec.validate();
  return spec;
}

SweepSpec
load_sweep(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("sweep", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep(buf.str(), path.parent_path());
}

namespace {

struct PointResult
{
  Row row;
  bool converged = true;
  std::vector<std::string> notes;
};

PointResult
evaluate(const SweepSpec& spec, double value, const SolverConfig& cfg)
{
  PointResult out;
  const Scenario eff = effective(sweep_point(spec, value));
  Row& row = out.row;
  row.add("axis", to_string(spec.axis));
  row.add("value", value);
  append_parameters(row, eff);

  std::string status = "ok";
  auto failed = [&](const char* what, const SolverError& e) {
    out.converged = false;
    status = "no_convergence";
    out.notes.push_back(std::string(to_string(spec.axis)) + "=" + format_number(value) + ", " + what +
                        ": " + e.what() + " (residual " + format_number(e.last_iterate().residual) + ")");
  };

  const int total = eff.n_wifi + eff.n_laa;
  ThroughputReport base;
  bool have_base = true;
  try {
    base = wifi_only_throughput(total, eff.wifi, cfg);
  } catch (const SolverError& e) {
    have_base = false;
    failed("Wi-Fi only", e);
  }

  Solution sol;
  ThroughputReport rep;
  bool have = true;
  try {
    sol = solve_coexistence(eff, cfg);
    rep = coexistence_throughput(eff, sol);
  } catch (const SolverError& e) {
    have = false;
    failed("coexistence", e);
  }
  if (have && out.converged) {
    const std::vector<Solution> roots = scan_fixed_points(eff);
    if (roots.size() > 1) {
      status = "multiple_fixed_points";
      std::string note = std::string(to_string(spec.axis)) + "=" + format_number(value) + ":";
      for (const Solution& r : roots)
        note += " (tau_w " + format_number(r.tau_w) + ", tau_l " + format_number(r.tau_l) + ")";
      out.notes.push_back(note);
    }
  }

  auto num = [have](double x) { return have ? format_number(x) : std::string(); };
  row.add("tau_w", num(sol.tau_w));
  row.add("tau_l", num(sol.tau_l));
  row.add("p_w", num(sol.p_w));
  row.add("p_l", num(sol.p_l));
  auto base_num = [have_base](double x) { return have_base ? format_number(x) : std::string(); };
  row.add("wifi_only_total_mbps", base_num(base.tput_wifi_mbps));
  row.add("wifi_only_per_user_mbps", base_num(base.per_user_wifi_mbps));
  row.add("coex_wifi_mbps", num(rep.tput_wifi_mbps));
  row.add("coex_laa_mbps", num(rep.tput_laa_mbps));
  row.add("coex_total_mbps", num(rep.total_mbps()));
  row.add("coex_wifi_per_user_mbps", num(rep.per_user_wifi_mbps));
  row.add("coex_laa_per_user_mbps", num(rep.per_user_laa_mbps));
  row.add("status", status);
  return out;
}

} // namespace

SweepResult
run_sweep(const SweepSpec& spec, const SolverConfig& cfg, unsigned threads)
{
  spec.validate();
  cfg.validate();
  const std::size_t n = spec.values.size();
  std::vector<PointResult> results(n);

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = evaluate(spec, spec.values[i], cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);

  SweepResult out;
  std::vector<Row> rows;
  for (auto& r : results) {
    rows.push_back(std::move(r.row));
    out.all_converged = out.all_converged && r.converged;
    for (auto& note : r.notes)
      out.notes.push_back(std::move(note));
  }
  out.table = to_table(rows);
  return out;
}

} // namespace coex::cli
