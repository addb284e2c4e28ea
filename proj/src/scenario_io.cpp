#include "coex/scenario_io.hpp"

#include "coex/ed.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace coex {

namespace {

void
reject_unknown(const YAML::Node& map, const std::string& where, const std::set<std::string>& known)
{
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key))
      throw InputError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

YAML::Node
require_map(const YAML::Node& node, const std::string& field)
{
  if (!node.IsMap())
    throw InputError(field, "expected a mapping");
  return node;
}

template <typename T>
void
read(const YAML::Node& map, const char* key, const std::string& where, T& out)
{
  const YAML::Node v = map[key];
  if (!v)
    return;
  const std::string field = where + "." + key;
  if (!v.IsScalar())
    throw InputError(field, "expected a scalar value");
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    throw InputError(field, "cannot convert '" + v.Scalar() + "'");
  }
}

double
read_probability(const YAML::Node& v, const std::string& field)
{
  if (v.IsScalar()) {
    try {
      return v.as<double>();
    } catch (const YAML::Exception&) {
      throw InputError(field, "cannot convert '" + v.Scalar() + "'");
    }
  }
  require_map(v, field);
  reject_unknown(v, field,
                 {"threshold_dbm", "snr_db", "signal_power_dbm", "noise_power_dbm", "samples"});
  ed::EdConfig c;
  read(v, "threshold_dbm", field, c.threshold_dbm);
  read(v, "noise_power_dbm", field, c.noise_power_dbm);
  read(v, "samples", field, c.samples);
  if (v["snr_db"] && v["signal_power_dbm"])
    throw InputError(field, "give either snr_db or signal_power_dbm, not both");
  if (v["snr_db"]) {
    double snr = 0.0;
    read(v, "snr_db", field, snr);
    c.signal_power_dbm = c.noise_power_dbm + snr;
  } else {
    read(v, "signal_power_dbm", field, c.signal_power_dbm);
  }
  if (c.samples < 1)
    throw InputError(field + ".samples", "must be >= 1");
  return ed::detection_probability(c);
}

WifiParams
parse_wifi(const YAML::Node& n)
{
  WifiParams w;
  if (!n)
    return w;
  require_map(n, "wifi");
  reject_unknown(n, "wifi",
                 {"w0", "m", "hold_stages", "payload_bytes", "data_rate_mbps",
                  "control_rate_mbps", "phy_header_us", "mac_header_bytes", "ack_bytes",
                  "difs_us", "sifs_us", "slot_us", "prop_delay_us"});
  read(n, "w0", "wifi", w.w0);
  read(n, "m", "wifi", w.m);
  read(n, "hold_stages", "wifi", w.hold_stages);
  read(n, "payload_bytes", "wifi", w.payload_bytes);
  read(n, "data_rate_mbps", "wifi", w.data_rate_mbps);
  read(n, "control_rate_mbps", "wifi", w.control_rate_mbps);
  read(n, "phy_header_us", "wifi", w.phy_header_us);
  read(n, "mac_header_bytes", "wifi", w.mac_header_bytes);
  read(n, "ack_bytes", "wifi", w.ack_bytes);
  read(n, "difs_us", "wifi", w.difs_us);
  read(n, "sifs_us", "wifi", w.sifs_us);
  read(n, "slot_us", "wifi", w.slot_us);
  read(n, "prop_delay_us", "wifi", w.prop_delay_us);
  return w;
}

LaaParams
parse_laa(const YAML::Node& n)
{
  if (!n)
    return load_priority_class(3);
  require_map(n, "laa");
  reject_unknown(n, "laa",
                 {"priority_class", "txop_variant", "w0", "m", "retry_limit", "defer_us",
                  "txop_us", "next_tx_delay_us", "data_rate_mbps", "pdcch_fraction"});
  int cls = 3;
  read(n, "priority_class", "laa", cls);
  std::string variant = "coexistence";
  read(n, "txop_variant", "laa", variant);
  TxopVariant v;
  if (variant == "coexistence")
    v = TxopVariant::coexistence;
  else if (variant == "exclusive")
    v = TxopVariant::exclusive;
  else
    throw InputError("laa.txop_variant", "expected 'coexistence' or 'exclusive'");
  LaaParams l;
  try {
    l = load_priority_class(cls, v);
  } catch (const std::domain_error& e) {
    throw InputError("laa.priority_class", e.what());
  }
  read(n, "w0", "laa", l.w0);
  read(n, "m", "laa", l.m);
  read(n, "retry_limit", "laa", l.retry_limit);
  read(n, "defer_us", "laa", l.defer_us);
  read(n, "txop_us", "laa", l.txop_us);
  read(n, "next_tx_delay_us", "laa", l.next_tx_delay_us);
  read(n, "data_rate_mbps", "laa", l.data_rate_mbps);
  read(n, "pdcch_fraction", "laa", l.pdcch_fraction);
  return l;
}

Scenario
parse_root(const YAML::Node& root)
{
  if (!root.IsMap())
    throw InputError("scenario", "document must be a mapping");
  reject_unknown(root, "", {"name", "nodes", "comparison_mode", "wifi", "laa", "detection"});

  Scenario s;
  if (root["name"])
    s.name = root["name"].as<std::string>();
  const YAML::Node nodes = root["nodes"];
  if (!nodes)
    throw InputError("nodes", "missing");
  require_map(nodes, "nodes");
  reject_unknown(nodes, "nodes", {"wifi", "laa"});
  s.n_wifi = 0;
  s.n_laa = 0;
  read(nodes, "wifi", "nodes", s.n_wifi);
  read(nodes, "laa", "nodes", s.n_laa);
  if (root["comparison_mode"]) {
    const YAML::Node v = root["comparison_mode"];
    try {
      s.comparison_mode = v.as<bool>();
    } catch (const YAML::Exception&) {
      throw InputError("comparison_mode", "expected true or false");
    }
  }
  s.wifi = parse_wifi(root["wifi"]);
  s.laa = parse_laa(root["laa"]);
  if (const YAML::Node d = root["detection"]) {
    require_map(d, "detection");
    reject_unknown(d, "detection", {"p_dw", "p_dl"});
    if (d["p_dw"])
      s.p_dw = read_probability(d["p_dw"], "detection.p_dw");
    if (d["p_dl"])
      s.p_dl = read_probability(d["p_dl"], "detection.p_dl");
  }
  s.validate();
  return s;
}

} // namespace

Scenario
parse_scenario(const std::string& yaml_text)
{
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw InputError("scenario", std::string("malformed YAML: ") + e.what());
  }
  return parse_root(root);
}

Scenario
load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("scenario", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string
to_yaml(const Scenario& s)
{
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "wifi" << YAML::Value << s.n_wifi;
  out << YAML::Key << "laa" << YAML::Value << s.n_laa;
  out << YAML::EndMap;
  out << YAML::Key << "comparison_mode" << YAML::Value << s.comparison_mode;

  const WifiParams& w = s.wifi;
  out << YAML::Key << "wifi" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "w0" << YAML::Value << w.w0;
  out << YAML::Key << "m" << YAML::Value << w.m;
  out << YAML::Key << "hold_stages" << YAML::Value << w.hold_stages;
  out << YAML::Key << "payload_bytes" << YAML::Value << w.payload_bytes;
  out << YAML::Key << "data_rate_mbps" << YAML::Value << w.data_rate_mbps;
  out << YAML::Key << "control_rate_mbps" << YAML::Value << w.control_rate_mbps;
  out << YAML::Key << "phy_header_us" << YAML::Value << w.phy_header_us;
  out << YAML::Key << "mac_header_bytes" << YAML::Value << w.mac_header_bytes;
  out << YAML::Key << "ack_bytes" << YAML::Value << w.ack_bytes;
  out << YAML::Key << "difs_us" << YAML::Value << w.difs_us;
  out << YAML::Key << "sifs_us" << YAML::Value << w.sifs_us;
  out << YAML::Key << "slot_us" << YAML::Value << w.slot_us;
  out << YAML::Key << "prop_delay_us" << YAML::Value << w.prop_delay_us;
  out << YAML::EndMap;

  const LaaParams& l = s.laa;
  out << YAML::Key << "laa" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "w0" << YAML::Value << l.w0;
  out << YAML::Key << "m" << YAML::Value << l.m;
  out << YAML::Key << "retry_limit" << YAML::Value << l.retry_limit;
  out << YAML::Key << "defer_us" << YAML::Value << l.defer_us;
  out << YAML::Key << "txop_us" << YAML::Value << l.txop_us;
  out << YAML::Key << "next_tx_delay_us" << YAML::Value << l.next_tx_delay_us;
  out << YAML::Key << "data_rate_mbps" << YAML::Value << l.data_rate_mbps;
  out << YAML::Key << "pdcch_fraction" << YAML::Value << l.pdcch_fraction;
  out << YAML::EndMap;

  out << YAML::Key << "detection" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "p_dw" << YAML::Value << s.p_dw;
  out << YAML::Key << "p_dl" << YAML::Value << s.p_dl;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

} // namespace coex
