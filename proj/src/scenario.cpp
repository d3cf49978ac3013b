#include "qcollapse/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace qcollapse {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

double require_number(const Json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

int pauli_axis_index(char name) {
  for (int i = 0; i < 4; ++i) {
    if (pauli_axis_names[i] == name) return i;
  }
  return -1;
}

void check_known_keys(const Json& j, const std::set<std::string>& known,
                      const std::string& where) {
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      bad_field(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
    }
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  check_known_keys(
      j, {"hamiltonian", "initial_state", "pointer_angles", "collapse_time", "scan", "cycles"},
      "");

  ScenarioConfig config;

  if (!j.contains("hamiltonian")) bad_field("hamiltonian", "missing");
  const Json& ham = j.at("hamiltonian");
  if (ham.is_string() && ham.get<std::string>() == "standard") {
    config.standard_hamiltonian = true;
  } else if (ham.is_object()) {
    check_known_keys(ham, {"pauli"}, "hamiltonian");
    if (!ham.contains("pauli") || !ham.at("pauli").is_object()) {
      bad_field("hamiltonian.pauli", "expected an object of two-letter Pauli keys");
    }
    config.standard_hamiltonian = false;
    for (const auto& item : ham.at("pauli").items()) {
      const std::string& key = item.key();
      const int a = key.size() == 2 ? pauli_axis_index(key[0]) : -1;
      const int b = key.size() == 2 ? pauli_axis_index(key[1]) : -1;
      if (a < 0 || b < 0) {
        bad_field("hamiltonian.pauli." + key, "keys are two letters over {I,X,Y,Z}");
      }
      config.pauli_h(a, b) = require_number(item.value(), "hamiltonian.pauli." + key);
    }
  } else {
    bad_field("hamiltonian", "expected \"standard\" or {\"pauli\": {...}}");
  }

  if (!j.contains("initial_state")) bad_field("initial_state", "missing");
  const Json& init = j.at("initial_state");
  if (init.is_string() && init.get<std::string>() == "standard") {
    config.standard_initial_state = true;
  } else if (init.is_array()) {
    if (init.size() != 4) bad_field("initial_state", "expected 4 amplitudes");
    Vector amplitudes(4);
    for (int k = 0; k < 4; ++k) {
      const Json& entry = init.at(k);
      if (!entry.is_array() || entry.size() != 2) {
        bad_field("initial_state[" + std::to_string(k) + "]", "expected [re, im]");
      }
      amplitudes[k] = Complex(require_number(entry.at(0), "initial_state"),
                              require_number(entry.at(1), "initial_state"));
    }
    const double norm = amplitudes.norm();
    if (norm < 1e-12) bad_field("initial_state", "amplitudes have (near-)zero norm");
    config.standard_initial_state = false;
    config.renormalized = std::abs(norm - 1.0) > 1e-6;
    config.initial_amplitudes = amplitudes / norm;
  } else {
    bad_field("initial_state", "expected \"standard\" or an array of 4 [re, im] pairs");
  }

  if (j.contains("pointer_angles")) {
    const Json& angles = j.at("pointer_angles");
    if (!angles.is_array() || angles.size() != 2) {
      bad_field("pointer_angles", "expected [theta, phi]");
    }
    config.theta = require_number(angles.at(0), "pointer_angles[0]");
    config.phi = require_number(angles.at(1), "pointer_angles[1]");
  }

  if (!j.contains("collapse_time")) bad_field("collapse_time", "missing");
  config.collapse_time = require_number(j.at("collapse_time"), "collapse_time");
  if (config.collapse_time < 0.0) bad_field("collapse_time", "must be non-negative");

  if (j.contains("scan")) {
    const Json& scan = j.at("scan");
    if (!scan.is_object()) bad_field("scan", "expected an object");
    check_known_keys(scan, {"t_start", "t_end", "step", "tol"}, "scan");
    ScanParams params{};
    for (const char* field : {"t_start", "t_end", "step", "tol"}) {
      if (!scan.contains(field)) bad_field(std::string("scan.") + field, "missing");
    }
    params.t_start = require_number(scan.at("t_start"), "scan.t_start");
    params.t_end = require_number(scan.at("t_end"), "scan.t_end");
    params.step = require_number(scan.at("step"), "scan.step");
    params.tol = require_number(scan.at("tol"), "scan.tol");
    if (params.step <= 0.0) bad_field("scan.step", "must be positive");
    if (params.tol <= 0.0) bad_field("scan.tol", "must be positive");
    config.scan = params;
  }

  if (j.contains("cycles")) {
    const Json& cycles = j.at("cycles");
    if (!cycles.is_number_integer() || cycles.get<long long>() < 0) {
      bad_field("cycles", "expected a non-negative integer");
    }
    config.cycles = cycles.get<int>();
  }

  return config;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
  }
  return from_json(j);
}

Json ScenarioConfig::to_json() const {
  Json j;
  if (standard_hamiltonian) {
    j["hamiltonian"] = "standard";
  } else {
    Json pauli = Json::object();
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (pauli_h(a, b) != 0.0) {
          pauli[std::string{pauli_axis_names[a], pauli_axis_names[b]}] = pauli_h(a, b);
        }
      }
    }
    j["hamiltonian"] = Json{{"pauli", pauli}};
  }
  if (standard_initial_state) {
    j["initial_state"] = "standard";
  } else {
    Json amplitudes = Json::array();
    for (int k = 0; k < initial_amplitudes.size(); ++k) {
      amplitudes.push_back({initial_amplitudes[k].real(), initial_amplitudes[k].imag()});
    }
    j["initial_state"] = amplitudes;
  }
  j["pointer_angles"] = {theta, phi};
  j["collapse_time"] = collapse_time;
  if (scan) {
    j["scan"] = {{"t_start", scan->t_start},
                 {"t_end", scan->t_end},
                 {"step", scan->step},
                 {"tol", scan->tol}};
  }
  if (cycles) {
    j["cycles"] = *cycles;
  }
  return j;
}

MeasurementScheme ScenarioConfig::to_scheme() const {
  Matrix hamiltonian;
  if (standard_hamiltonian) {
    hamiltonian = qcollapse::standard_hamiltonian();
  } else {
    PauliDecomposition natural = pauli_h;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        natural(a, b) *= planck_h;
      }
    }
    hamiltonian = pauli_compose(natural);
  }
  PureState initial = standard_initial_state ? build_standard_scheme().initial_state
                                             : PureState(initial_amplitudes);
  return MeasurementScheme{
      std::move(hamiltonian),
      QubitBasis::canonical(),
      QubitBasis::from_bloch(theta, phi),
      std::move(initial),
      {collapse_time},
  };
}

Json RunReport::to_json() const {
  Json j;
  j["config"] = config;
  j["e_pre_h"] = e_pre_h;
  j["e_post_h"] = e_post_h;
  j["delta_h"] = delta_h;
  j["cross_h"] = cross_h;
  Json rows = Json::array();
  for (const BranchRow& row : branches) {
    rows.push_back({{"branch", row.branch},
                    {"probability", row.probability},
                    {"energy_h", row.energy_h}});
  }
  j["branches"] = rows;
  if (premeasurement_instants) {
    j["premeasurement_instants"] = *premeasurement_instants;
  }
  if (cycles_cumulative_h) {
    j["cycles_cumulative_h"] = *cycles_cumulative_h;
  }
  return j;
}

RunReport RunReport::from_json(const Json& j) {
  RunReport report;
  report.config = j.at("config");
  report.e_pre_h = j.at("e_pre_h").get<double>();
  report.e_post_h = j.at("e_post_h").get<double>();
  report.delta_h = j.at("delta_h").get<double>();
  report.cross_h = j.at("cross_h").get<double>();
  for (const Json& row : j.at("branches")) {
    report.branches.push_back({row.at("branch").get<int>(),
                               row.at("probability").get<double>(),
                               row.at("energy_h").get<double>()});
  }
  if (j.contains("premeasurement_instants")) {
    report.premeasurement_instants = j.at("premeasurement_instants").get<std::vector<double>>();
  }
  if (j.contains("cycles_cumulative_h")) {
    report.cycles_cumulative_h = j.at("cycles_cumulative_h").get<double>();
  }
  return report;
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "key,value\n";
  out << "e_pre_h," << format_number(e_pre_h) << "\n";
  out << "e_post_h," << format_number(e_post_h) << "\n";
  out << "delta_h," << format_number(delta_h) << "\n";
  out << "cross_h," << format_number(cross_h) << "\n";
  for (const BranchRow& row : branches) {
    out << "branch_" << row.branch << "_probability," << format_number(row.probability) << "\n";
    out << "branch_" << row.branch << "_energy_h," << format_number(row.energy_h) << "\n";
  }
  if (premeasurement_instants) {
    out << "premeasurement_instants,";
    for (std::size_t i = 0; i < premeasurement_instants->size(); ++i) {
      out << (i ? ";" : "") << format_number((*premeasurement_instants)[i]);
    }
    out << "\n";
  }
  if (cycles_cumulative_h) {
    out << "cycles_cumulative_h," << format_number(*cycles_cumulative_h) << "\n";
  }
  return out.str();
}

RunReport run_scenario(const ScenarioConfig& config) {
  const MeasurementScheme scheme = config.to_scheme();
  const CollapseAnalysis analysis = analyze_collapse(scheme, config.collapse_time);

  RunReport report;
  report.config = config.to_json();
  report.e_pre_h = analysis.ledger.e_pre / planck_h;
  report.e_post_h = analysis.ledger.e_post / planck_h;
  report.delta_h = analysis.ledger.delta / planck_h;
  report.cross_h = analysis.ledger.cross / planck_h;
  for (const CollapseOutcome& outcome : analysis.outcomes) {
    report.branches.push_back(
        {outcome.branch, outcome.probability, outcome.branch_energy / planck_h});
  }
  if (config.scan) {
    const auto instants = scan_premeasurement(scheme, config.scan->t_start, config.scan->t_end,
                                              config.scan->step, config.scan->tol);
    std::vector<double> times;
    times.reserve(instants.size());
    for (const auto& [t, unused] : instants) times.push_back(t);
    report.premeasurement_instants = std::move(times);
  }
  if (config.cycles) {
    report.cycles_cumulative_h =
        cycle_ledger(scheme, config.collapse_time, *config.cycles) / planck_h;
  }
  return report;
}

std::vector<ScanRow> scan_scenario(const ScenarioConfig& config) {
  if (!config.scan) {
    throw ConfigError("config field 'scan': missing (required by the scan command)");
  }
  const MeasurementScheme scheme = config.to_scheme();
  const ScanParams& params = *config.scan;
  const Propagator propagator(scheme.hamiltonian);

  std::vector<ScanRow> rows;
  for (std::size_t k = 0;; ++k) {
    const double t = params.t_start + static_cast<double>(k) * params.step;
    if (t >= params.t_end) break;
    const PureState state(propagator.apply(scheme.initial_state.amplitudes, t));
    const CorrelationReport correlation =
        correlation_report(state, scheme.system_basis, scheme.pointer, params.tol);

    const double e_pre = expectation(state, scheme.hamiltonian);
    double e_post = 0.0;
    for (const CollapseOutcome& outcome : project(state, scheme.pointer)) {
      e_post += outcome.probability * expectation(outcome.post_state, scheme.hamiltonian);
    }
    rows.push_back({t, e_pre / planck_h, e_post / planck_h, (e_post - e_pre) / planck_h,
                    correlation.score, correlation.is_premeasurement});
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "t,e_pre_h,e_post_h,delta_h,score,is_premeasurement\n";
  for (const ScanRow& row : rows) {
    out << format_number(row.t) << "," << format_number(row.e_pre_h) << ","
        << format_number(row.e_post_h) << "," << format_number(row.delta_h) << ","
        << format_number(row.score) << "," << (row.is_premeasurement ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace qcollapse
