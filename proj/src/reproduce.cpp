#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "qcollapse/scenario.hpp"

namespace qcollapse {

namespace {

double max_err(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

Json collapse_event_json(const MeasurementScheme& scheme, double t) {
  const CollapseAnalysis analysis = analyze_collapse(scheme, t);
  Json event;
  event["t"] = t;
  event["e_pre_h"] = analysis.ledger.e_pre / planck_h;
  event["e_post_h"] = analysis.ledger.e_post / planck_h;
  event["delta_h"] = analysis.ledger.delta / planck_h;
  event["cross_h"] = analysis.ledger.cross / planck_h;
  Json branches = Json::array();
  for (const CollapseOutcome& outcome : analysis.outcomes) {
    branches.push_back({{"branch", outcome.branch},
                        {"probability", outcome.probability},
                        {"energy_h", outcome.branch_energy / planck_h}});
  }
  event["branches"] = branches;
  return event;
}

}  // namespace

ReproductionReport run_reproduction() {
  ReproductionReport report;
  auto check = [&report](const std::string& name, double error, double tol) {
    report.checks.push_back({name, error, tol, error <= tol});
  };

  const MeasurementScheme scheme = build_standard_scheme();
  const Matrix h = scheme.hamiltonian;
  const Matrix u = standard_premeasurement_unitary();

  // state after one tick: equal-weight branches with a quarter phase
  {
    Vector expected(4);
    expected << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1);
    expected /= std::numbers::sqrt2;
    const PureState state = evolve(scheme, 1.0);
    check("one-tick evolution amplitudes", (state.amplitudes - expected).cwiseAbs().maxCoeff(),
          1e-10);
  }

  check("generator recovered from the principal log", max_err(principal_log_hamiltonian(u), h),
        1e-10);
  check("one-tick propagator regenerated from the generator", max_err(unitary_exp(h, 1.0), u),
        1e-10);
  check("three-tick propagator (exchanged pointers)", max_err(unitary_exp(h, 3.0), u * u * u),
        1e-10);
  check("four-tick propagator returns to identity",
        max_err(unitary_exp(h, 4.0), Matrix::Identity(4, 4)), 1e-10);

  // Pauli coefficient table, units of h
  {
    const PauliDecomposition d = pauli_decompose(h);
    PauliDecomposition expected;
    expected(0, 0) = 0.125;   // II
    expected(1, 0) = -0.125;  // XI
    expected(2, 0) = -0.125;  // YI
    expected(0, 2) = 0.125;   // IY
    expected(1, 2) = -0.125;  // XY
    expected(2, 2) = 0.125;   // YY
    double worst = 0.0;
    Json table = Json::object();
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double value_h = d(a, b) / planck_h;
        worst = std::max(worst, std::abs(value_h - expected(a, b)));
        if (std::abs(value_h) > 1e-12) {
          table[std::string{pauli_axis_names[a], pauli_axis_names[b]}] = value_h;
        }
      }
    }
    report.pauli_h = table;
    check("pauli coefficient table (units of h)", worst, 1e-12);
  }

  // spectrum of the generator, units of h
  {
    const SpectralDecomposition eig = spectral_decompose(h, MatrixKind::hermitian);
    std::vector<double> values;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      values.push_back(eig.eigenvalues[k].real() / planck_h);
    }
    std::sort(values.begin(), values.end());
    const std::vector<double> expected = {-0.25, 0.0, 0.25, 0.5};
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(values[k] - expected[k]));
    report.hamiltonian_eigenvalues_h = values;
    check("generator spectrum {-0.25, 0, 0.25, 0.5} h", worst, 1e-10);
  }

  for (const double t : {1.0, 3.0}) {
    const EnergyLedger ledger = energy_balance(scheme, t);
    const std::string at = " (t=" + format_number(t) + ")";
    check("energy before collapse is zero" + at, std::abs(ledger.e_pre / planck_h), 1e-10);
    check("ensemble energy after collapse is h/8" + at,
          std::abs(ledger.e_post / planck_h - 0.125) / 0.125, 1e-9);
    report.collapse_events.push_back(collapse_event_json(scheme, t));
  }

  // post-measurement ensemble at the first collapse
  {
    const CollapseAnalysis analysis = analyze_collapse(scheme, 1.0);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    check("post-measurement density matrix diag(1/2, 0, 0, 1/2)",
          max_err(ensemble_density(analysis.outcomes).matrix, expected), 1e-10);
  }

  // premeasurement instants on one period
  {
    const auto instants = scan_premeasurement(scheme, 0.0, 4.0, 1e-3, 1e-6);
    double worst = instants.size() == 2
                       ? std::max(std::abs(instants[0].first - 1.0), std::abs(instants[1].first - 3.0))
                       : 1.0;
    for (const auto& [t, unused] : instants) report.premeasurement_instants.push_back(t);
    check("premeasurement instants {1, 3} on [0, 4)", worst, 1e-3);
  }

  check("hundred-cycle energy accumulation 12.5 h",
        std::abs(cycle_ledger(scheme, 1.0, 100) / planck_h - 12.5), 1e-7);

  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const ReproductionCheck& c) { return c.passed; });
  return report;
}

Json ReproductionReport::to_json() const {
  Json j;
  j["all_passed"] = all_passed;
  Json checks_json = Json::array();
  for (const ReproductionCheck& c : checks) {
    checks_json.push_back({{"name", c.name}, {"error", c.error}, {"tol", c.tol},
                           {"passed", c.passed}});
  }
  j["checks"] = checks_json;
  j["hamiltonian_eigenvalues_h"] = hamiltonian_eigenvalues_h;
  j["pauli_h"] = pauli_h;
  j["collapse"] = collapse_events;
  j["premeasurement_instants"] = premeasurement_instants;
  return j;
}

std::string ReproductionReport::to_table() const {
  std::ostringstream out;
  out << std::left;
  for (const ReproductionCheck& c : checks) {
    out << (c.passed ? "pass  " : "FAIL  ") << std::setw(56) << c.name << " error "
        << std::setw(12) << format_number(c.error) << " tol " << format_number(c.tol) << "\n";
  }
  out << "\n";
  for (const Json& event : collapse_events) {
    out << "collapse at t=" << format_number(event.at("t").get<double>())
        << ":  e_pre_h=" << format_number(event.at("e_pre_h").get<double>())
        << "  e_post_h=" << format_number(event.at("e_post_h").get<double>())
        << "  delta_h=" << format_number(event.at("delta_h").get<double>()) << "\n";
  }
  out << "premeasurement instants:";
  for (const double t : premeasurement_instants) out << " " << format_number(t);
  out << "\n" << (all_passed ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return out.str();
}

}  // namespace qcollapse
