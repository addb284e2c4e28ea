#ifndef COEX_SCENARIO_IO_HPP
#define COEX_SCENARIO_IO_HPP

#include "coex/core.hpp"

#include <filesystem>
#include <string>

/**
 * Scenario files are YAML documents:
 *
 *   name: table4_case3            # free text, echoed in reports
 *   nodes: {wifi: 1, laa: 1}
 *   comparison_mode: true         # testbed timing overrides
 *   wifi:                         # every key optional, defaults below
 *     w0: 16
 *     m: 2
 *     hold_stages: 1
 *     payload_bytes: 2048
 *     data_rate_mbps: 9
 *     control_rate_mbps: 6
 *     phy_header_us: 20
 *     mac_header_bytes: 34
 *     ack_bytes: 14
 *     difs_us: 34
 *     sifs_us: 16
 *     slot_us: 9
 *     prop_delay_us: 0.1
 *   laa:
 *     priority_class: 3           # preset applied first (default 3)
 *     txop_variant: coexistence   # or "exclusive" for the 10 ms TXOP
 *     w0: 16                      # explicit keys override the preset
 *     m: 2
 *     retry_limit: 1
 *     defer_us: 43
 *     txop_us: 8000
 *     next_tx_delay_us: 500
 *     data_rate_mbps: 7.8
 *     pdcch_fraction: 0.9285714285714286
 *   detection:                    # both default to 1
 *     p_dw: 1
 *     p_dl:                       # or derive it from an energy detector
 *       threshold_dbm: -72
 *       snr_db: 22                # or signal_power_dbm
 *       noise_power_dbm: -94
 *       samples: 680
 *
 * Unknown keys and wrongly typed values raise InputError naming the field.
 */
namespace coex {

Scenario parse_scenario(const std::string& yaml_text);

Scenario load_scenario(const std::filesystem::path& path);

/// Every field written explicitly, so parse_scenario(to_yaml(s)) == s.
std::string to_yaml(const Scenario& s);

} // namespace coex

#endif
