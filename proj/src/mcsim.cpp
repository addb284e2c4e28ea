#include "coex/mcsim.hpp"

#include "coex/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace coex::sim {

const char*
to_string(EventClass c)
{
  switch (c) {
    case EventClass::idle:
      return "idle";
    case EventClass::wifi_success:
      return "wifi-success";
    case EventClass::laa_success:
      return "laa-success";
    case EventClass::wifi_collision:
      return "wifi-collision";
    case EventClass::laa_collision:
      return "laa-collision";
    case EventClass::cross_collision:
      return "cross-collision";
  }
  return "?";
}

void
SimConfig::validate() const
{
  scenario.validate();
  if (horizon_events <= warmup_events)
    throw InputError("sim.horizon_events", "must exceed warmup_events");
  if (batches < 2)
    throw InputError("sim.batches", "must be >= 2");
  if (static_cast<std::uint64_t>(batches) > horizon_events - warmup_events)
    throw InputError("sim.batches", "more batches than measured events");
}

std::uint64_t
uniform_below(std::mt19937_64& rng, std::uint64_t n)
{
  // 2^64 mod n; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold)
      return r % n;
  }
}

namespace {

bool
bernoulli(std::mt19937_64& rng, double p)
{
  if (p >= 1.0)
    return true;
  if (p <= 0.0)
    return false;
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

struct Node
{
  bool wifi;
  int stage = 0;
  std::uint64_t counter = 0;
};

struct ChainShape
{
  int w0;
  int m;
  int last_stage;

  std::uint64_t window(int stage) const
  {
    return static_cast<std::uint64_t>(w0) << std::min(stage, m);
  }
};

struct Batch
{
  std::uint64_t events = 0;
  double time_us = 0.0;
  double wifi_bits = 0.0;
  double laa_bits = 0.0;
  std::uint64_t wifi_tx = 0;
  std::uint64_t wifi_failed = 0;
  std::uint64_t laa_tx = 0;
  std::uint64_t laa_failed = 0;
  std::array<std::uint64_t, kEventClasses> classes{};
};

template <typename F>
Estimate
batch_estimate(const std::vector<Batch>& batches, double overall, F&& per_batch)
{
  double sum = 0.0;
  double sum_sq = 0.0;
  int used = 0;
  for (const auto& b : batches) {
    double x = 0.0;
    if (!per_batch(b, x))
      continue;
    sum += x;
    sum_sq += x * x;
    ++used;
  }
  Estimate e{overall, 0.0};
  if (used > 1) {
    const double mean = sum / used;
    const double var = std::max(0.0, (sum_sq - used * mean * mean) / (used - 1));
    e.std_error = std::sqrt(var / used);
  }
  return e;
}

double
ratio(double num, double den)
{
  return den > 0.0 ? num / den : 0.0;
}

void
write_trace_header(std::ostream& out, const std::vector<Node>& nodes)
{
  out << "event,class,duration_us";
  int w = 0;
  int l = 0;
  for (const auto& n : nodes) {
    const char* tag = n.wifi ? "wifi" : "laa";
    const int idx = n.wifi ? w++ : l++;
    out << ',' << tag << idx << "_stage," << tag << idx << "_counter";
  }
  out << '\n';
}

SimReport
run(const SimConfig& cfg, bool imperfect_detection, std::ostream* trace)
{
  cfg.validate();
  const Scenario s = effective(cfg.scenario);
  const EventDurations ed = event_durations(s.wifi, s.laa);
  const double wifi_bits = 8.0 * s.wifi.payload_bytes;
  const double laa_bits = s.laa.pdcch_fraction * s.laa.txop_us * s.laa.data_rate_mbps;
  const double p_dw = imperfect_detection ? s.p_dw : 1.0;
  const double p_dl = imperfect_detection ? s.p_dl : 1.0;

  const ChainShape wifi_chain{s.wifi.w0, s.wifi.m, s.wifi.m + s.wifi.hold_stages};
  const ChainShape laa_chain{s.laa.w0, s.laa.m, s.laa.m + s.laa.retry_limit};

  std::mt19937_64 rng(cfg.seed);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(s.n_wifi + s.n_laa));
  for (int i = 0; i < s.n_wifi; ++i)
    nodes.push_back({true, 0, uniform_below(rng, wifi_chain.window(0))});
  for (int i = 0; i < s.n_laa; ++i)
    nodes.push_back({false, 0, uniform_below(rng, laa_chain.window(0))});

  const std::uint64_t measured = cfg.horizon_events - cfg.warmup_events;
  const auto n_batches = static_cast<std::uint64_t>(cfg.batches);
  std::vector<Batch> batches(n_batches);
  Batch total;

  if (trace)
    write_trace_header(*trace, nodes);

  for (std::uint64_t e = 0; e < cfg.horizon_events; ++e) {
    int wifi_tx = 0;
    int laa_tx = 0;
    for (const auto& n : nodes) {
      if (n.counter == 0)
        (n.wifi ? wifi_tx : laa_tx)++;
    }

    EventClass cls;
    double duration;
    double wifi_delivered = 0.0;
    double laa_delivered = 0.0;
    if (wifi_tx == 0 && laa_tx == 0) {
      cls = EventClass::idle;
      duration = s.wifi.slot_us;
    } else if (wifi_tx > 0 && laa_tx > 0) {
      cls = EventClass::cross_collision;
      duration = ed.t_cc;
    } else if (wifi_tx == 1) {
      cls = EventClass::wifi_success;
      duration = ed.t_sw;
      wifi_delivered = wifi_bits;
    } else if (laa_tx == 1) {
      cls = EventClass::laa_success;
      duration = ed.t_sl;
      laa_delivered = laa_bits;
    } else if (wifi_tx > 1) {
      cls = EventClass::wifi_collision;
      duration = ed.t_cw;
    } else {
      cls = EventClass::laa_collision;
      duration = ed.t_cl;
    }

    if (trace) {
      *trace << e << ',' << to_string(cls) << ',' << duration;
      for (const auto& n : nodes)
        *trace << ',' << n.stage << ',' << n.counter;
      *trace << '\n';
    }

    int wifi_failed = 0;
    int laa_failed = 0;
    for (auto& n : nodes) {
      if (n.counter > 0) {
        --n.counter;
        continue;
      }
      const ChainShape& chain = n.wifi ? wifi_chain : laa_chain;
      bool failed;
      if (n.wifi)
        failed = wifi_tx > 1 || (laa_tx > 0 && bernoulli(rng, p_dw));
      else
        failed = laa_tx > 1 || (wifi_tx > 0 && bernoulli(rng, p_dl));
      if (failed) {
        n.stage = n.stage < chain.last_stage ? n.stage + 1 : 0;
        ++(n.wifi ? wifi_failed : laa_failed);
      } else {
        n.stage = 0;
      }
      n.counter = uniform_below(rng, chain.window(n.stage));
    }

    if (e < cfg.warmup_events)
      continue;
    const std::uint64_t k = e - cfg.warmup_events;
    Batch& b = batches[k * n_batches / measured];
    for (Batch* acc : {&b, &total}) {
      ++acc->events;
      acc->time_us += duration;
      acc->wifi_bits += wifi_delivered;
      acc->laa_bits += laa_delivered;
      acc->wifi_tx += static_cast<std::uint64_t>(wifi_tx);
      acc->wifi_failed += static_cast<std::uint64_t>(wifi_failed);
      acc->laa_tx += static_cast<std::uint64_t>(laa_tx);
      acc->laa_failed += static_cast<std::uint64_t>(laa_failed);
      ++acc->classes[static_cast<std::size_t>(cls)];
    }
  }

  SimReport r;
  r.measured_events = total.events;
  r.simulated_time_us = total.time_us;
  r.event_counts = total.classes;

  r.tput_wifi_mbps = batch_estimate(batches, total.wifi_bits / total.time_us,
                                    [](const Batch& b, double& x) {
                                      x = b.wifi_bits / b.time_us;
                                      return true;
                                    });
  r.tput_laa_mbps = batch_estimate(batches, total.laa_bits / total.time_us,
                                   [](const Batch& b, double& x) {
                                     x = b.laa_bits / b.time_us;
                                     return true;
                                   });

  const double n_w = s.n_wifi;
  const double n_l = s.n_laa;
  r.measured_tau_w = batch_estimate(
    batches, ratio(static_cast<double>(total.wifi_tx), n_w * static_cast<double>(total.events)),
    [&](const Batch& b, double& x) {
      x = ratio(static_cast<double>(b.wifi_tx), n_w * static_cast<double>(b.events));
      return n_w > 0;
    });
  r.measured_tau_l = batch_estimate(
    batches, ratio(static_cast<double>(total.laa_tx), n_l * static_cast<double>(total.events)),
    [&](const Batch& b, double& x) {
      x = ratio(static_cast<double>(b.laa_tx), n_l * static_cast<double>(b.events));
      return n_l > 0;
    });
  r.measured_p_w = batch_estimate(
    batches, ratio(static_cast<double>(total.wifi_failed), static_cast<double>(total.wifi_tx)),
    [](const Batch& b, double& x) {
      x = ratio(static_cast<double>(b.wifi_failed), static_cast<double>(b.wifi_tx));
      return b.wifi_tx > 0;
    });
  r.measured_p_l = batch_estimate(
    batches, ratio(static_cast<double>(total.laa_failed), static_cast<double>(total.laa_tx)),
    [](const Batch& b, double& x) {
      x = ratio(static_cast<double>(b.laa_failed), static_cast<double>(b.laa_tx));
      return b.laa_tx > 0;
    });

  for (std::size_t c = 0; c < kEventClasses; ++c) {
    r.event_frequencies[c] = batch_estimate(
      batches, ratio(static_cast<double>(total.classes[c]), static_cast<double>(total.events)),
      [c](const Batch& b, double& x) {
        x = ratio(static_cast<double>(b.classes[c]), static_cast<double>(b.events));
        return true;
      });
  }
  return r;
}

} // namespace

SimReport
simulate(const SimConfig& cfg, std::ostream* trace)
{
  return run(cfg, false, trace);
}

SimReport
simulate_with_detection(const SimConfig& cfg, std::ostream* trace)
{
  return run(cfg, true, trace);
}

} // namespace coex::sim
