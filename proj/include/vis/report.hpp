#pragma once

#include "vis/analysis.hpp"
#include "vis/numeric.hpp"
#include "vis/roots.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace vis {

// Batch table verification: one record per (row, params); data-only rows get one record each.
struct TablesRun {
  std::vector<RowReport> records;
  int passed = 0, failed = 0, data_only = 0;
  bool ok() const { return failed == 0; }
};
TablesRun run_tables(const std::vector<TableRow>& rows, const std::string& filter, int max_ambient);

nlohmann::json to_json(const RowReport& r);
nlohmann::json tables_report(const TablesRun& run, const std::string& filter, int max_ambient);
std::string tables_markdown(const TablesRun& run);

std::string certificate_markdown(const Certificate& c);

// Family specs: "slR:N", "compact:su:N", "row:<row id>:k=v,k=v".
struct EpsilonListing {
  std::string family;
  int torus_rank = 0, lattice_rank = 0;
  std::vector<EpsilonEntry> entries;
  std::vector<std::string> labels;  // matched candidate label per entry, "" if none
};
EpsilonListing epsilon_listing(const std::string& spec);
nlohmann::json to_json(const EpsilonListing& l);
std::string epsilon_markdown(const EpsilonListing& l);

} // namespace vis
