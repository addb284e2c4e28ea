#ifndef COEX_CLI_PARAMS_HPP
#define COEX_CLI_PARAMS_HPP

#include "coex/cli/report.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coex::cli {

/// Ordered (column, cell) pairs, built up one field at a time.
struct Row
{
  std::vector<std::pair<std::string, std::string>> cells;

  void add(std::string name, std::string value) { cells.emplace_back(std::move(name), std::move(value)); }
  void add(std::string name, const char* value) { add(std::move(name), std::string(value)); }
  void add(std::string name, int value) { add(std::move(name), std::to_string(value)); }
  void add(std::string name, double value) { add(std::move(name), format_number(value)); }

  void set(const std::string& name, std::string value)
  {
    for (auto& c : cells)
      if (c.first == name) {
        c.second = std::move(value);
        return;
      }
    throw std::logic_error("no cell " + name);
  }
};

/// Header from the first row; all rows must share its columns.
inline Table
to_table(const std::vector<Row>& rows)
{
  Table t;
  if (rows.empty())
    return t;
  for (const auto& c : rows.front().cells)
    t.header.push_back(c.first);
  for (const auto& r : rows) {
    if (r.cells.size() != t.header.size())
      throw std::logic_error("ragged table");
    std::vector<std::string> line;
    for (const auto& c : r.cells)
      line.push_back(c.second);
    t.rows.push_back(std::move(line));
  }
  return t;
}

/// Effective scenario parameters as n_wifi, n_laa, wifi_*, laa_*, p_dw, p_dl.
void append_parameters(Row& row, const Scenario& eff);

} // namespace coex::cli

#endif
