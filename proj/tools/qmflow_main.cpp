// qmflow: strip-flow experiments on the one-holed torus.
//
//   qmflow validate <config>          check a scenario document or experiment config
//   qmflow build <config> --N n       print the scenario document built for N
//   qmflow run <config> [--N n]       evaluate one scenario, one CSV row
//   qmflow sweep <config>             full N sweep as CSV
//   qmflow props [--filter name]      property suite
//
// Exit codes: 0 ok, 2 invalid config, 3 scenario infeasible, 4 property failure.
// Worker threads: QMFLOW_WORKERS.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "qmflow/errors.hpp"
#include "qmflow/experiment.hpp"
#include "qmflow/flow.hpp"
#include "qmflow/properties.hpp"
#include "qmflow/scenario.hpp"

namespace {

using namespace qmflow;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitProperty = 4;

int report(const Error& e) {
  std::cerr << error_record(e.kind(), e.what()) << '\n';
  return dynamic_cast<const ConfigError*>(&e) ? kExitConfig : kExitInfeasible;
}

std::optional<Scenario> as_scenario(const KeyValueDocument& doc) {
  if (!is_scenario_document(doc)) return std::nullopt;
  return scenario_from_document(doc);
}

void check_scenario(const Scenario& sc) {
  sc.validate();
  require_zero_flux(sc);
  check_validity_window(sc, sc.tau());
}

int cmd_validate(const std::string& path) {
  const KeyValueDocument doc = load_document(path);
  if (auto sc = as_scenario(doc)) {
    const auto problems = sc->violations();
    for (const auto& p : problems) std::cout << "violation: " << p << '\n';
    if (!problems.empty()) throw InfeasibleScenario(problems.front());
    check_scenario(*sc);
    std::cout << "ok: " << sc->strips().size() << " strips, tau = " << sc->tau() << '\n';
    return 0;
  }
  const ExperimentConfig config = ExperimentConfig::from_document(doc);
  for (int N : config.N_list) {
    const Scenario sc = build_scenario(config.build_params(N));
    check_scenario(sc);
    std::cout << "ok: N = " << N << ", T = " << sc.T() << ", m = " << sc.m()
              << ", bad area budget = " << sc.validation().bad_area_budget << '\n';
  }
  return 0;
}

int cmd_build(const std::string& path, int N) {
  const ExperimentConfig config = ExperimentConfig::from_document(load_document(path));
  std::cout << serialize(build_scenario(config.build_params(N)));
  return 0;
}

int cmd_run(const std::string& path, std::optional<int> N) {
  const KeyValueDocument doc = load_document(path);
  SweepRow row;
  if (auto sc = as_scenario(doc)) {
    row = evaluate_scenario(ExperimentConfig{}, *sc);
  } else {
    const ExperimentConfig config = ExperimentConfig::from_document(doc);
    if (!N && config.N_list.empty()) throw ConfigError("N_list is empty; pass --N");
    row = evaluate_N(config, N ? *N : config.N_list.front());
  }
  write_csv(std::cout, {row});
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& output_override) {
  ExperimentConfig config = ExperimentConfig::load(path);
  if (!output_override.empty()) config.output = output_override;
  const std::vector<SweepRow> rows = run_sweep(config);
  if (config.output == "-") {
    write_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + config.output + "'");
  write_csv(out, rows);
  return 0;
}

int cmd_props(const std::string& filter) {
  bool all = true;
  for (const PropertyResult& r : run_property_suite(filter)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all = all && r.passed;
  }
  return all ? 0 : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strip-flow experiments on the one-holed torus"};
  app.require_subcommand(1);

  std::string path;
  std::string filter;
  std::string output;
  int build_N = 1;
  std::optional<int> run_N;

  auto* validate = app.add_subcommand("validate", "Check a scenario document or experiment config");
  validate->add_option("config", path, "Config or scenario file")->required();

  auto* build = app.add_subcommand("build", "Print the scenario document for one N");
  build->add_option("config", path, "Experiment config")->required();
  build->add_option("--N", build_N, "Number of copies")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Evaluate a single scenario");
  run->add_option("config", path, "Config or scenario file")->required();
  run->add_option("--N", run_N, "Number of copies (default: first of N_list)")
      ->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Run the N sweep and write CSV");
  sweep->add_option("config", path, "Experiment config")->required();
  sweep->add_option("-o,--output", output, "CSV path, overrides the config");

  auto* props = app.add_subcommand("props", "Run the property suite");
  props->add_option("--filter", filter, "Only properties whose name contains this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(path);
    if (*build) return cmd_build(path, build_N);
    if (*run) return cmd_run(path, run_N);
    if (*sweep) return cmd_sweep(path, output);
    if (*props) return cmd_props(filter);
  } catch (const Error& e) {
    return report(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << error_record("InvalidArgument", e.what()) << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << error_record("InternalError", e.what()) << '\n';
    return 1;
  }
  return 0;
}
