// One line per acceptance criterion; exit status 1 if any fails.
#include "vis/actions.hpp"
#include "vis/labels.hpp"
#include "vis/report.hpp"
#include "vis/roots.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace vis;

namespace {

struct Outcome {
  bool ok = false;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int n, const std::string& name, const std::function<Outcome()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %d %s: %s (%s; %.1f s)\n", n, name.c_str(), o.ok ? "PASS" : "FAIL", o.note.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
  return o.ok;
}

std::vector<TableRow> classical_rows() {
  std::vector<TableRow> out;
  for (auto& r : load_dataset(default_dataset_path()))
    if (r.implementable) out.push_back(r);
  return out;
}

TablesRun table_run;

Outcome tables() {
  table_run = run_tables(classical_rows(), "", 8);
  int with_formula = 0;
  for (const auto& r : table_run.records)
    if (r.expected_rank) ++with_formula;
  std::ostringstream os;
  os << table_run.passed << " points pass, " << table_run.failed << " fail, " << with_formula
     << " checked against a closed-form rank";
  for (const auto& r : table_run.records)
    if (r.status == "fail") {
      os << "; first failure " << r.row_id << " " << format_params(r.params) << ": " << r.detail;
      break;
    }
  return {table_run.failed == 0 && table_run.passed > 0, os.str()};
}

Outcome epsilon_suite() {
  int points = 0, twists = 0, bad = 0;
  std::string first;
  for (const auto& row : classical_rows()) {
    if (row.table != 1) continue;
    for (const auto& p : parameter_sweep(row, 8)) {
      const InvolutionTriple t = catalog_triple(row, p, false);
      ++points;
      for (const auto& e : epsilon_family(t.tau, t.theta, &t.sigma)) {
        ++twists;
        if (!e.report.pass()) {
          ++bad;
          if (first.empty()) first = row.id() + " " + format_params(p) + " " + e.report.signature;
        }
      }
    }
  }
  const EpsilonListing sl3 = epsilon_listing("slR:3");
  const std::set<std::string> labels(sl3.labels.begin(), sl3.labels.end());
  const bool sl3_ok = labels == std::set<std::string>{"so(3)", "so(2,1)"};
  std::ostringstream os;
  os << points << " points, " << twists << " twists, " << bad << " failing; sl(3,R) family gives";
  for (const auto& l : labels) os << " " << (l.empty() ? "?" : l);
  if (!first.empty()) os << "; first failure " << first;
  return {bad == 0 && sl3_ok && points > 0, os.str()};
}

Outcome type_two() {
  int cases = 0, bad = 0;
  std::ostringstream os;
  for (auto variant : {TypeII::One, TypeII::Two})
    for (int p = 1; p <= 2; ++p)
      for (int q = 1; q <= 2; ++q) {
        const TypeIIData d = compact_typeII_data(variant, p, q);  // conditions checked on construction
        const bool one = variant == TypeII::One;
        const int want_fixed = one ? p * (2 * p + 1) + q * (2 * q + 1) + 1 : p * p + q * q;
        const int want_pair = one ? 4 * p * q : 2 * p * q;
        const int want_slice = one ? 2 * p * q : p * q;
        const auto& g = *d.g;
        const RealSpan pair = multi_fixed(g, {{&d.tau, -1}, {&d.theta, -1}});
        const RealSpan pair_prime = multi_fixed(*d.g_prime, {{&d.tau_prime, -1}, {&d.theta_prime, -1}});
        const bool ok = multi_fixed(g, {{&d.tau, 1}, {&d.theta, 1}}).dim() == want_fixed &&
                        pair.dim() == want_pair &&
                        multi_fixed(g, {{&d.sigma, 1}, {&d.tau, -1}, {&d.theta, -1}}).dim() == want_slice &&
                        commute(d.tau_prime, d.theta_prime) &&
                        from_ambient(g, to_ambient(*d.g_prime, pair_prime)) == pair;
        ++cases;
        if (!ok) {
          ++bad;
          os << (one ? "II-1" : "II-2") << " p'=" << p << " q'=" << q << " mismatch; ";
        }
      }
  os << cases << " cases (II-1 and II-2, p', q' in {1,2}), " << bad << " failing";
  return {bad == 0, os.str()};
}

Outcome certificates() {
  NumericSettings s;
  s.samples = 100;
  s.tol = 1e-6;
  int pass = 0, total = 0;
  double worst = 0, slowest = 0;
  std::ostringstream os;
  for (const auto& spec : action_registry()) {
    const auto t0 = std::chrono::steady_clock::now();
    const ActionModel m = build_action(spec.id);
    const Certificate a = certify(m, s);
    slowest = std::max(slowest, seconds_since(t0));
    const Certificate b = certify(m, s);
    ++total;
    const bool same = to_json(a).dump() == to_json(b).dump();
    if (a.pass() && same) ++pass;
    else os << spec.id << (same ? " inconclusive" : " nondeterministic") << "; ";
    worst = std::max({worst, a.slice_meets_orbit, a.sigma_fixes_slice, a.sigma_preserves_orbits, a.j_transversality});
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d actions pass at 100 samples, reruns byte-identical, worst residual %.2e, slowest %.1f s",
                pass, total, worst, slowest);
  os << buf;
  return {pass == total, os.str()};
}

Outcome round_trips() {
  NumericSettings s;
  int ok_actions = 0, total = 0;
  double worst_rate = 1.0;
  std::ostringstream os;
  for (const auto& spec : action_registry()) {
    const PlantedStats st = planted_recovery(build_action(spec.id), s, 1000, 1e-8);
    const double rate = static_cast<double>(st.recovered) / st.trials;
    worst_rate = std::min(worst_rate, rate);
    ++total;
    if (rate >= 0.99) ++ok_actions;
    else os << spec.id << " " << st.recovered << "/1000; ";
  }
  // Iwasawa on SL(2,R) and Sp(2,R) through the unipotent model
  const ActionModel n = build_action("sl2R:N");
  const Certifier c(n, s);
  double iw = 0;
  int iw_fail = 0;
  for (int i = 0; i < 1000; ++i) {
    auto rng = item_rng(0, static_cast<std::uint64_t>(i), 4);
    std::normal_distribution<double> nd(0.0, 0.7);
    CMat x = CMat::Zero(2, 2);
    for (const auto& b : n.p_basis) x += nd(rng) * to_complex(b);
    for (const auto& b : n.h_factors.front()) x += nd(rng) * to_complex(b);
    CMat k = CMat::Zero(2, 2);
    k(0, 1) = nd(rng);
    k(1, 0) = -k(0, 1);
    const GroupElement g = GroupElement::exp(x) * GroupElement::exp(k);
    try {
      iw = std::max(iw, iwasawa(c, g, rng).residual);
    } catch (const IwasawaNonConvergence&) {
      ++iw_fail;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%d actions recover >= 99%% of 1000 planted points below 1e-8 (worst rate %.3f); "
                "Iwasawa worst residual %.2e, %d non-converged",
                ok_actions, total, worst_rate, iw, iw_fail);
  os << buf;
  return {ok_actions == total && iw_fail == 0 && iw < 1e-10, os.str()};
}

Outcome holomorphy_split() {
  int checked = 0, bad = 0;
  std::string first;
  for (const auto& r : table_run.records) {
    if (r.status == "data-only") continue;
    const bool table2 = r.row_id.rfind("table2/", 0) == 0;
    const std::string want = table2 ? "anti-holomorphic" : "holomorphic";
    ++checked;
    if (r.holomorphy != want) {
      ++bad;
      if (first.empty()) first = r.row_id + " " + format_params(r.params) + " gives '" + r.holomorphy + "'";
    }
  }
  std::ostringstream os;
  os << checked << " points classified, " << bad << " disagree with their table";
  if (!first.empty()) os << "; first " << first;
  return {bad == 0 && checked > 0, os.str()};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "table verification", tables);
  ok &= report(2, "epsilon families", epsilon_suite);
  ok &= report(3, "compact type II", type_two);
  ok &= report(4, "numeric certificates", certificates);
  ok &= report(5, "oracle round-trips", round_trips);
  ok &= report(6, "holomorphy classification", holomorphy_split);
  return ok ? 0 : 1;
}
