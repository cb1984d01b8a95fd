#include "vis/report.hpp"

#include "vis/actions.hpp"
#include "vis/labels.hpp"

#include <sstream>

namespace vis {

TablesRun run_tables(const std::vector<TableRow>& rows, const std::string& filter, int max_ambient) {
  TablesRun run;
  for (const auto& row : rows) {
    if (!matches_filter(row, filter)) continue;
    if (!row.implementable) {
      run.records.push_back(data_only_report(row));
      ++run.data_only;
      continue;
    }
    for (const auto& p : parameter_sweep(row, max_ambient)) {
      run.records.push_back(verify_row(row, p));
      if (run.records.back().status == "pass") ++run.passed;
      else ++run.failed;
    }
  }
  return run;
}

nlohmann::json to_json(const RowReport& r) {
  nlohmann::json j;
  j["row"] = r.row_id;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["status"] = r.status;
  j["detail"] = r.detail;
  if (r.status == "data-only") return j;
  j["commute"] = r.triple.commute;
  j["anti_holomorphic"] = r.triple.anti_holomorphic;
  j["rank_equal"] = r.triple.rank_equal;
  j["rank"] = {{"pair", r.triple.rank_pair}, {"slice", r.triple.rank_slice}};
  j["expected_rank"] = r.expected_rank ? nlohmann::json(*r.expected_rank) : nlohmann::json(nullptr);
  j["holomorphy"] = r.holomorphy;
  j["slice_dim"] = r.slice_dim;
  return j;
}

nlohmann::json tables_report(const TablesRun& run, const std::string& filter, int max_ambient) {
  nlohmann::json j;
  j["schema"] = "visibility-report/1";
  j["filter"] = filter;
  j["max_ambient"] = max_ambient;
  j["records"] = nlohmann::json::array();
  for (const auto& r : run.records) j["records"].push_back(to_json(r));
  j["summary"] = {{"pass", run.passed}, {"fail", run.failed}, {"data_only", run.data_only}};
  return j;
}

std::string tables_markdown(const TablesRun& run) {
  std::ostringstream os;
  os << "| row | params | status | rank | expected | holomorphy | detail |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : run.records) {
    os << "| " << r.row_id << " | " << format_params(r.params) << " | " << r.status << " | ";
    if (r.status == "data-only") {
      os << " |  |  | " << r.detail << " |\n";
      continue;
    }
    os << r.triple.rank_pair << " | " << (r.expected_rank ? std::to_string(*r.expected_rank) : "-") << " | "
       << r.holomorphy << " | " << r.detail << " |\n";
  }
  os << "\n" << run.passed << " pass, " << run.failed << " fail, " << run.data_only << " data-only\n";
  return os.str();
}

std::string certificate_markdown(const Certificate& c) {
  std::ostringstream os;
  os << "## " << c.action << ": " << c.subgroup << " on " << c.space << "\n\n";
  os << "| condition | max residual |\n|---|---|\n";
  os << "| slice meets every orbit | " << c.slice_meets_orbit << " |\n";
  os << "| sigma fixes the slice | " << c.sigma_fixes_slice << " |\n";
  os << "| sigma preserves orbits | " << c.sigma_preserves_orbits << " |\n";
  os << "| J-transversality | " << c.j_transversality << " |\n\n";
  os << "samples " << c.samples << ", restarts " << c.restarts << ", seed " << c.seed << ", tol " << c.tol
     << ", inconclusive samples " << c.inconclusive_samples << "\n\nstatus: " << c.status << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

ParamMap parse_params(const std::string& text) {
  ParamMap out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DatasetError("parameter '" + item + "' is not k=v");
    try {
      out[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw DatasetError("parameter '" + item + "' has no integer value");
    }
  }
  return out;
}

int positive_int(const std::string& s) {
  try {
    const int n = std::stoi(s);
    if (n > 0) return n;
  } catch (const std::logic_error&) {
  }
  throw UnsupportedFamily("bad size '" + s + "'");
}

} // namespace

EpsilonListing epsilon_listing(const std::string& spec) {
  EpsilonListing out;
  out.family = spec;
  std::vector<std::string> candidates;
  ParamMap params;
  AlgebraPtr g;
  LinearAlgebraMap tau, theta, sigma;
  bool has_sigma = false;

  if (spec.rfind("slR:", 0) == 0) {
    const int n = positive_int(spec.substr(4));
    const Realization r = build("sl_R", {n}, 16);
    g = r.g;
    tau = theta = r.theta;
    candidates.push_back("so(" + std::to_string(n) + ")");
    for (int p = n - 1; 2 * p >= n; --p) candidates.push_back("so(" + std::to_string(p) + "," + std::to_string(n - p) + ")");
  } else if (spec.rfind("compact:su:", 0) == 0) {
    const int n = positive_int(spec.substr(11));
    const Realization r = build("su_compact", {n}, 16);
    g = r.g;
    tau = theta = r.theta;
    candidates.push_back("su(" + std::to_string(n) + ")");
  } else if (spec.rfind("row:", 0) == 0) {
    const std::string rest = spec.substr(4);
    const auto colon = rest.find(':');
    const TableRow row = dataset_row(rest.substr(0, colon));
    params = parse_params(colon == std::string::npos ? "" : rest.substr(colon + 1));
    const InvolutionTriple t = catalog_triple(row, params, false);
    g = t.g;
    tau = t.tau;
    theta = t.theta;
    sigma = t.sigma;
    has_sigma = true;
    if (row.g_tau && !is_exceptional_label(*row.g_tau)) candidates.push_back(*row.g_tau);
  } else {
    const std::string head = spec.substr(0, spec.find(':'));
    if (is_exceptional_label(head)) throw UnsupportedFamily("exceptional family " + head + " has no matrix model");
    throw UnsupportedFamily("unknown epsilon family '" + spec + "'");
  }

  const RealSpan torus = family_torus(*g, tau, theta, has_sigma ? &sigma : nullptr);
  const RootDatum d = root_decomposition(g, torus);
  out.torus_rank = d.rank();
  out.lattice_rank = d.lattice_rank();
  const LinearAlgebraMap id = identity_map(g);
  for (auto& eps : signatures(d)) {
    TwistReport rep = verify_twisted_pair(has_sigma ? sigma : id, tau, theta, d, eps);
    std::string label;
    for (const auto& c : candidates)
      if (label_fingerprint(c, params) == rep.fixed) {
        label = instantiate_label(c, params);
        break;
      }
    out.labels.push_back(label);
    out.entries.push_back({std::move(eps), std::move(rep)});
  }
  return out;
}

nlohmann::json to_json(const EpsilonListing& l) {
  nlohmann::json j;
  j["schema"] = "visibility-epsilon/1";
  j["family"] = l.family;
  j["torus_rank"] = l.torus_rank;
  j["lattice_rank"] = l.lattice_rank;
  j["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < l.entries.size(); ++i) {
    const auto& r = l.entries[i].report;
    j["entries"].push_back({{"signature", r.signature},
                            {"fixed_fingerprint", r.fixed.to_string()},
                            {"fixed_label", l.labels[i].empty() ? nlohmann::json(nullptr) : nlohmann::json(l.labels[i])},
                            {"involution", r.involution},
                            {"automorphism", r.automorphism},
                            {"commutes_sigma", r.commutes_sigma},
                            {"commutes_theta", r.commutes_theta},
                            {"rank", {{"pair", r.rank_pair}, {"slice", r.rank_slice}}},
                            {"pass", r.pass()}});
  }
  return j;
}

std::string epsilon_markdown(const EpsilonListing& l) {
  std::ostringstream os;
  os << "family " << l.family << ", torus rank " << l.torus_rank << ", lattice rank " << l.lattice_rank << "\n\n";
  os << "| eps | fixed algebra | fingerprint | rank | pass |\n|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < l.entries.size(); ++i) {
    const auto& r = l.entries[i].report;
    os << "| " << r.signature << " | " << (l.labels[i].empty() ? "?" : l.labels[i]) << " | " << r.fixed.to_string()
       << " | " << r.rank_pair << " | " << (r.pass() ? "yes" : "no") << " |\n";
  }
  return os.str();
}

} // namespace vis
