#include "vis/actions.hpp"
#include "vis/dataset.hpp"
#include "vis/errors.hpp"
#include "vis/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

enum Exit { kPass = 0, kTableFailure = 1, kUsage = 2, kInconclusive = 3 };

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const nlohmann::json& j, const std::string& md) const {
    const std::string text = format == "md" ? md : j.dump(2) + "\n";
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw vis::DatasetError("cannot write " + path);
    f << text;
  }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong visibility checks for Hermitian symmetric spaces"};
  app.require_subcommand(1);

  Output out;
  std::string dataset;
  app.add_option("--dataset", dataset, "Row dataset (JSON); VISIBILITY_DATASET overrides");
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--out", out.path, "Write the report here instead of stdout");

  std::string filter;
  int max_ambient = 8;
  auto* tables = app.add_subcommand("tables-verify", "Check every implementable row over its parameter range");
  tables->add_option("--filter", filter, "table1..table4, row=N, or a row id");
  tables->add_option("--max-ambient", max_ambient, "Largest matrix size swept")->check(CLI::PositiveNumber);

  std::string action;
  vis::NumericSettings settings;
  auto* cert = app.add_subcommand("certify", "Numeric strong-visibility certificate for one action");
  cert->add_option("action", action, "Action id, see `actions`")->required();
  cert->add_option("--seed", settings.seed, "Master seed");
  cert->add_option("--tol", settings.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  cert->add_option("--samples", settings.samples, "Sample points")->check(CLI::PositiveNumber);
  cert->add_option("--restarts", settings.restarts, "Optimizer restarts per fit")->check(CLI::PositiveNumber);

  std::string family;
  auto* eps = app.add_subcommand("epsilon", "List the signature twists of a family");
  eps->add_option("family", family, "slR:N, compact:su:N or row:<id>:k=v,...")->required();

  auto* list = app.add_subcommand("actions", "List the certifiable actions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const char* env = std::getenv("VISIBILITY_DATASET");
  if (!(env && *env) && !dataset.empty()) setenv("VISIBILITY_DATASET", dataset.c_str(), 1);

  try {
    if (*tables) {
      const auto rows = vis::load_dataset(vis::default_dataset_path());
      const vis::TablesRun run = vis::run_tables(rows, filter, max_ambient);
      out.emit(vis::tables_report(run, filter, max_ambient), vis::tables_markdown(run));
      return run.ok() ? kPass : kTableFailure;
    }
    if (*cert) {
      const vis::ActionModel model = vis::build_action(action);
      const vis::Certificate c = vis::certify(model, settings);
      out.emit(vis::to_json(c), vis::certificate_markdown(c));
      return c.pass() ? kPass : kInconclusive;
    }
    if (*eps) {
      const vis::EpsilonListing l = vis::epsilon_listing(family);
      out.emit(vis::to_json(l), vis::epsilon_markdown(l));
      return kPass;
    }
    if (*list) {
      nlohmann::json j = nlohmann::json::array();
      std::string md = "| id | kind | group | subgroup | space |\n|---|---|---|---|---|\n";
      for (const auto& a : vis::action_registry()) {
        j.push_back({{"id", a.id}, {"kind", a.kind}, {"group", a.group}, {"subgroup", a.subgroup}, {"space", a.space}});
        md += "| " + a.id + " | " + a.kind + " | " + a.group + " | " + a.subgroup + " | " + a.space + " |\n";
      }
      out.emit(j, md);
      return kPass;
    }
  } catch (const vis::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
