#pragma once

// N-sweep experiment: configuration, evaluation and CSV output.
//
// Config keys (key-value document, or the same keys in a flat JSON object):
//
//   pattern               counted word, e.g. ab                  (ab)
//   N_list                comma-separated copy counts, may be empty (1,2,4,8)
//   T | T_times_N         fixed strip width, or T = value / N    (T_times_N = 0.16)
//   m | m_per_N           fixed steps per period, or m = value*N (m_per_N = 16)
//   K | K_per_m           iterate horizon, or K = value * m      (K_per_m = 4)
//   hole_halfwidth                                               (0.02)
//   phase_H, phase_V, phase_D   grid phases                      (0.3, 0.3, 0.42)
//   smoothing             profile margin                         (0)
//   samples_per_strip                                            (20000)
//   seed                                                         (1)
//   hofer_time_samples, hofer_space_samples                      (8, 256)
//   calabi_time_samples, calabi_space_samples                    (8, 256)
//   output                CSV path; empty or '-' for stdout      (-)

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qmflow/keyvalue.hpp"
#include "qmflow/scenario.hpp"

namespace qmflow {

struct ExperimentConfig {
  std::string pattern = "ab";
  std::vector<int> N_list{1, 2, 4, 8};
  bool T_scales_with_N = true;
  double T_value = 0.16;
  bool m_scales_with_N = true;
  int m_value = 16;
  bool K_scales_with_m = true;
  int K_value = 4;
  double hole_halfwidth = 0.02;
  GridOffsets phases;
  double smoothing = 0.0;
  int samples_per_strip = 20000;
  std::uint64_t seed = 1;
  int hofer_time_samples = 8;
  int hofer_space_samples = 256;
  int calabi_time_samples = 8;
  int calabi_space_samples = 256;
  std::string output = "-";

  double T_for(int N) const { return T_scales_with_N ? T_value / N : T_value; }
  int m_for(int N) const { return m_scales_with_N ? m_value * N : m_value; }
  int K_for(int N) const { return K_scales_with_m ? K_value * m_for(N) : K_value; }
  BuildParams build_params(int N) const;

  /// Throws ConfigError on unknown keys, malformed values or violated
  /// invariants (K not a multiple of m, nonpositive sizes, ...).
  static ExperimentConfig from_document(const KeyValueDocument& doc);
  static ExperimentConfig from_json(const std::string& text);
  /// Dispatches on the file extension (.json or key-value).
  static ExperimentConfig load(const std::string& path);
  KeyValueDocument to_document() const;
};

/// Loads either format into a key-value document.
KeyValueDocument load_document(const std::string& path);

struct SweepRow {
  int N = 0;
  double T = 0.0;
  int m = 0;
  double tau = 0.0;
  double rho_est = 0.0;
  double rho_stderr = 0.0;
  double rho_pred = 0.0;
  double rho_pred_radius = 0.0;
  double bad_area = 0.0;
  double bad_area_budget = 0.0;
  double hofer_numeric = 0.0;
  double hofer_2Ktau = 0.0;
  double calabi = 0.0;
  double ratio = 0.0;  // |rho_est| / hofer_numeric
};

/// Builds, checks and evaluates the scenario for one N. Throws
/// InfeasibleScenario, ValidityWindowExceeded or NonHamiltonian.
SweepRow evaluate_N(const ExperimentConfig& config, int N);

/// Evaluates an explicit scenario (K = K_per_m * m when K scales with m).
SweepRow evaluate_scenario(const ExperimentConfig& config, const Scenario& sc);

/// One row per N, in list order.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "N,T,m,tau,rho_est,rho_stderr,rho_pred,bad_area,hofer_numeric,hofer_2Ktau,calabi,ratio";

std::string format_row(const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// One-line JSON error record: {"error": kind, "message": ...}.
std::string error_record(const std::string& kind, const std::string& message);

}  // namespace qmflow
