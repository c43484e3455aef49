#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eit/io.hpp"
#include "eit/scenario.hpp"
#include "eit/verify.hpp"

namespace fs = std::filesystem;
using namespace eit;

namespace {

Scenario load_scenario(const std::string& ref) {
  if (fs::exists(ref)) return Scenario::from_file(ref);
  // fall back to a bundled scenario name
  for (const std::string& name : bundled_scenario_names())
    if (name == ref) return Scenario::from_json_text(bundled_scenario_text(name));
  throw ConfigError("scenario '" + ref + "' is neither a file nor a bundled name");
}

int do_run(const std::string& scen_ref, const std::string& out_dir, long seed, bool seed_set) {
  Scenario sc = load_scenario(scen_ref);
  if (seed_set) sc.seed = static_cast<std::uint64_t>(seed);
  fs::create_directories(out_dir);

  RunOutput run = run_scenario(sc);
  write_record_file(out_dir + "/record.csv", run.record);
  for (size_t k = 0; k < run.record.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "/snapshot_%03zu.csv", k);
    write_snapshot_file(out_dir + name, run.record.snapshots[k].state,
                        run.record.snapshots[k].t, run.record.scenario_hash);
  }

  std::ofstream summary(out_dir + "/summary.txt");
  summary << "scenario: " << sc.name << "\n";
  summary << "hash: " << run.record.scenario_hash << "\n";
  summary << "steps: " << run.record.steps << "  dt: " << format_g17(run.record.dt) << "\n";
  if (!run.record.samples.empty()) {
    const auto& a = run.record.samples.front();
    const auto& b = run.record.samples.back();
    summary << "mass drift: " << format_g17(std::abs(b.mass - a.mass)) << "\n";
    summary << "energy drift: " << format_g17(std::abs(b.energy - a.energy)) << "\n";
    summary << "entropy change: " << format_g17(b.entropy - a.entropy) << "\n";
    double pmin = 1e300;
    for (const auto& s : run.record.samples) pmin = std::min(pmin, s.production_min);
    summary << "min pointwise production: " << format_g17(pmin) << "\n";
  }
  if (run.record.blew_up) {
    summary << "status: BLOW-UP (" << run.record.note << ") - partial record\n";
    std::cerr << "run blew up: " << run.record.note << "\n";
    return 2;
  }
  summary << "status: ok\n";
  std::cout << "wrote " << out_dir << "/record.csv (" << run.record.samples.size()
            << " samples, " << run.record.snapshots.size() << " snapshots)\n";
  return 0;
}

int do_verify(const std::string& suite) {
  std::vector<Check> checks = verify_suite(suite);
  size_t passed = 0;
  for (const Check& c : checks) {
    std::cout << (c.pass ? "[ PASS ] " : "[ FAIL ] ") << c.name;
    if (!c.detail.empty()) std::cout << "  -- " << c.detail;
    std::cout << "\n";
    if (c.pass) ++passed;
  }
  std::cout << passed << "/" << checks.size() << " checks passed\n";
  return all_pass(checks) ? 0 : 1;
}

int do_sweep(const std::string& scen_ref, const std::string& param, const std::string& values_csv,
             const std::string& out_dir) {
  Scenario base = load_scenario(scen_ref);
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    values.push_back(std::stod(tok));
  }
  std::vector<SweepRow> rows = run_sweep(base, param, values);
  fs::create_directories(out_dir);
  std::ofstream f(out_dir + "/sweep.csv");
  f << "# eit-sweep v1\n# scenario=" << base.name << " param=" << param << "\n";
  f << "value,steps,energy_drift_rel,min_production,cit_l2_distance,second_sound,diffusive\n";
  for (const SweepRow& r : rows) {
    f << format_g17(r.value) << "," << r.steps << "," << format_g17(r.energy_drift_rel) << ","
      << format_g17(r.min_production) << "," << format_g17(r.cit_l2_distance) << ","
      << format_g17(r.second_sound) << "," << (r.diffusive ? 1 : 0) << "\n";
  }
  std::cout << "wrote " << out_dir << "/sweep.csv (" << rows.size() << " runs)\n";
  return 0;
}

int do_scenarios(const std::string& export_dir) {
  if (export_dir.empty()) {
    for (const std::string& n : bundled_scenario_names()) std::cout << n << "\n";
    return 0;
  }
  fs::create_directories(export_dir);
  for (const std::string& n : bundled_scenario_names()) {
    std::ofstream f(export_dir + "/" + n + ".json");
    f << bundled_scenario_text(n) << "\n";
  }
  std::cout << "exported " << bundled_scenario_names().size() << " scenarios to " << export_dir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eitflow: desk-scale extended-irreversible-thermodynamics fluid solver"};
  app.require_subcommand(1);

  std::string scenario_ref, out_dir = "out", suite = "all", param, values;
  long seed = 0;

  auto* run = app.add_subcommand("run", "run one scenario and write record + snapshots");
  run->add_option("--scenario", scenario_ref, "scenario file or bundled name")->required();
  run->add_option("--out-dir", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "fields|thermo|material|finite-dim|balances|all");

  auto* sw = app.add_subcommand("sweep", "run one scenario per parameter value");
  sw->add_option("--scenario", scenario_ref)->required();
  sw->add_option("--param", param, "dotted path, e.g. closure.tau1")->required();
  sw->add_option("--values", values, "comma-separated values")->required();
  sw->add_option("--out-dir", out_dir);

  std::string export_dir;
  auto* scn = app.add_subcommand("scenarios", "list bundled scenarios (or export them)");
  scn->add_option("--export", export_dir, "write bundled scenario files to this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(scenario_ref, out_dir, seed, seed_opt->count() > 0);
    if (ver->parsed()) return do_verify(suite);
    if (sw->parsed()) return do_sweep(scenario_ref, param, values, out_dir);
    if (scn->parsed()) return do_scenarios(export_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
