#pragma once

#include "vis/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vis {

struct ParamRange {
  std::string name;
  long min = 0, max = 0;
};

// One record per table row; see docs/dataset.schema.json.
struct TableRow {
  int table = 0;
  std::string row;
  std::string type;
  std::string g;
  std::optional<std::string> g_tau, g_sigma, g_sigma_tau, rank;
  std::vector<ParamRange> params;
  std::vector<std::string> constraints;
  std::optional<std::string> ambient;
  bool implementable = false;
  std::optional<std::string> epsilon_family;
  std::vector<std::string> sigma_alternatives;
  std::optional<std::string> note;

  std::string id() const { return "table" + std::to_string(table) + (table == 3 ? "/" : "/row") + row; }
};

// Throws DatasetError on unreadable files, invalid JSON, schema violations or an empty row list.
std::vector<TableRow> load_dataset(const std::string& path);
std::vector<TableRow> parse_dataset(const std::string& text);

// VISIBILITY_DATASET if set, else the dataset shipped in data/.
std::string default_dataset_path();

// Parameter points of a row that satisfy its constraints and fit the ambient bound,
// in lexicographic order of the declared parameters.
std::vector<ParamMap> parameter_sweep(const TableRow& row, int max_ambient);
int ambient_size(const TableRow& row, const ParamMap& params);

// Filter terms joined by ','; each is "tableN", "table4" (rows carrying Table 4 columns),
// "row=LABEL", "implementable", "all" or empty.
bool matches_filter(const TableRow& row, const std::string& filter);

} // namespace vis
