#include "vis/dataset.hpp"
#include "vis/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vis {

using nlohmann::json;

namespace {

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw DatasetError(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

TableRow parse_row(const json& j) {
  if (!j.is_object()) throw DatasetError("row record must be an object");
  TableRow r;
  try {
    r.table = j.at("table").get<int>();
    r.row = j.at("row").get<std::string>();
    r.type = j.value("type", "");
    r.g = j.at("g").get<std::string>();
    r.implementable = j.at("implementable").get<bool>();
  } catch (const json::exception& e) {
    throw DatasetError(std::string("row record: ") + e.what());
  }
  if (r.table < 1 || r.table > 3) throw DatasetError("table id must be 1, 2 or 3 in row " + r.row);
  r.g_tau = opt_string(j, "g_tau");
  r.g_sigma = opt_string(j, "g_sigma");
  r.g_sigma_tau = opt_string(j, "g_sigma_tau");
  r.rank = opt_string(j, "rank");
  r.ambient = opt_string(j, "ambient");
  r.epsilon_family = opt_string(j, "epsilon_family");
  r.note = opt_string(j, "note");
  if (j.contains("params"))
    for (const auto& p : j.at("params")) {
      try {
        r.params.push_back({p.at("name").get<std::string>(), p.at("min").get<long>(), p.at("max").get<long>()});
      } catch (const json::exception& e) {
        throw DatasetError("params of row " + r.row + ": " + e.what());
      }
    }
  if (j.contains("constraints"))
    for (const auto& c : j.at("constraints")) r.constraints.push_back(c.get<std::string>());
  if (j.contains("sigma_alternatives"))
    for (const auto& c : j.at("sigma_alternatives")) r.sigma_alternatives.push_back(c.get<std::string>());
  if (r.implementable && !r.ambient) throw DatasetError("implementable row " + r.row + " lacks 'ambient'");
  return r;
}

} // namespace

std::vector<TableRow> parse_dataset(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DatasetError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.at("rows").is_array())
    throw DatasetError("dataset must be an object with a 'rows' array");
  std::vector<TableRow> rows;
  for (const auto& r : doc.at("rows")) rows.push_back(parse_row(r));
  if (rows.empty()) throw DatasetError("dataset has no rows");
  return rows;
}

std::vector<TableRow> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

std::string default_dataset_path() {
  if (const char* env = std::getenv("VISIBILITY_DATASET"); env && *env) return env;
  return std::string(VIS_DATA_DIR) + "/tables.json";
}

int ambient_size(const TableRow& row, const ParamMap& params) {
  if (!row.ambient) throw DatasetError("row " + row.row + " has no ambient size");
  return static_cast<int>(evaluate_integer(*row.ambient, params));
}

std::vector<ParamMap> parameter_sweep(const TableRow& row, int max_ambient) {
  std::vector<ParamMap> out;
  if (!row.implementable) return out;
  ParamMap current;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == row.params.size()) {
      for (const auto& c : row.constraints)
        if (!evaluate_condition(c, current)) return;
      if (ambient_size(row, current) <= max_ambient) out.push_back(current);
      return;
    }
    const auto& pr = row.params[k];
    for (long v = pr.min; v <= pr.max; ++v) {
      current[pr.name] = v;
      self(self, k + 1);
    }
    current.erase(pr.name);
  };
  recurse(recurse, 0);
  return out;
}

bool matches_filter(const TableRow& row, const std::string& filter) {
  std::stringstream ss(filter);
  std::string term;
  while (std::getline(ss, term, ',')) {
    if (term.empty() || term == "all") continue;
    if (term == "table4") {
      if (!(row.table == 1 && row.g_sigma_tau)) return false;
    } else if (term.rfind("table", 0) == 0) {
      if (term.substr(5) != std::to_string(row.table)) return false;
    } else if (term.rfind("row=", 0) == 0) {
      if (term.substr(4) != row.row) return false;
    } else if (term == "implementable") {
      if (!row.implementable) return false;
    } else {
      throw DatasetError("unknown filter term '" + term + "'");
    }
  }
  return true;
}

} // namespace vis
