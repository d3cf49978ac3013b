#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcollapse/collapse.hpp"

namespace qcollapse {

using Json = nlohmann::ordered_json;

struct ScanParams {
  double t_start;
  double t_end;
  double step;
  double tol;
};

/// Parsed scenario. Pauli coefficients and all reported energies are in
/// multiples of h; conversion to natural units happens in to_scheme().
struct ScenarioConfig {
  bool standard_hamiltonian = true;
  PauliDecomposition pauli_h;  // used when !standard_hamiltonian, units of h
  bool standard_initial_state = true;
  Vector initial_amplitudes;   // used when !standard_initial_state, normalized
  bool renormalized = false;   // amplitudes were off by more than 1e-6
  double theta = 0.0;
  double phi = 0.0;
  double collapse_time = 0.0;
  std::optional<ScanParams> scan;
  std::optional<int> cycles;

  /// Throws ConfigError naming the offending field.
  static ScenarioConfig from_json(const Json& j);
  static ScenarioConfig from_file(const std::string& path);

  /// Canonical echo of the parsed configuration.
  Json to_json() const;

  MeasurementScheme to_scheme() const;
};

struct BranchRow {
  int branch;
  double probability;
  double energy_h;
};

/// Machine-readable result of one scenario run; energies in multiples of h.
struct RunReport {
  Json config;
  double e_pre_h = 0.0;
  double e_post_h = 0.0;
  double delta_h = 0.0;
  double cross_h = 0.0;
  std::vector<BranchRow> branches;
  std::optional<std::vector<double>> premeasurement_instants;
  std::optional<double> cycles_cumulative_h;

  Json to_json() const;
  static RunReport from_json(const Json& j);
  /// Flat key,value rendering.
  std::string to_csv() const;
};

RunReport run_scenario(const ScenarioConfig& config);

struct ScanRow {
  double t;
  double e_pre_h;
  double e_post_h;
  double delta_h;
  double score;
  bool is_premeasurement;
};

/// One row per grid point; requires a scan block in the config.
std::vector<ScanRow> scan_scenario(const ScenarioConfig& config);

/// CSV with columns t, e_pre_h, e_post_h, delta_h, score, is_premeasurement.
std::string scan_csv(const std::vector<ScanRow>& rows);

struct ReproductionCheck {
  std::string name;
  double error;
  double tol;
  bool passed;
};

/// End-to-end rerun of the standard scheme against its reference quantities.
struct ReproductionReport {
  std::vector<ReproductionCheck> checks;
  std::vector<double> hamiltonian_eigenvalues_h;
  Json pauli_h;
  std::vector<Json> collapse_events;  // one per scheduled collapse time
  std::vector<double> premeasurement_instants;
  bool all_passed = false;

  Json to_json() const;
  std::string to_table() const;
};

ReproductionReport run_reproduction();

/// Doubles rendered with 12 significant digits.
std::string format_number(double value);

}  // namespace qcollapse
