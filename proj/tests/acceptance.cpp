// Acceptance suite: end-to-end checks of the reference quantities and the
// randomized invariants, one pass/fail line per criterion.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcollapse/scenario.hpp"
#include "testutil.hpp"

using namespace qcollapse;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int number, const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();  // empty string means pass
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("PASS  %2d  %s\n", number, name.c_str());
    } else {
      std::printf("FAIL  %2d  %s  [%s]\n", number, name.c_str(), detail.c_str());
      ++failures;
    }
  }
};

std::string expect_le(const char* what, double value, double bound) {
  if (value <= bound) return "";
  std::ostringstream out;
  out << what << " = " << value << " exceeds " << bound;
  return out.str();
}

MeasurementScheme random_scheme(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  return MeasurementScheme{
      testutil::random_hermitian(4, rng),
      QubitBasis::canonical(),
      QubitBasis::from_bloch(angle(rng), angle(rng)),
      PureState(testutil::random_state(4, rng)),
      {1.0},
  };
}

}  // namespace

int main() {
  Harness harness;
  const MeasurementScheme scheme = build_standard_scheme();
  const Matrix h = scheme.hamiltonian;
  const double unit = planck_h / 8.0;

  harness.criterion(1, "one-tick evolution reaches the equal-weight correlated state", [&] {
    Vector expected(4);
    expected << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1);
    expected /= std::numbers::sqrt2;
    const double err = (evolve(scheme, 1.0).amplitudes - expected).cwiseAbs().maxCoeff();
    return expect_le("max amplitude error", err, 1e-10);
  });

  harness.criterion(2, "principal log and exponential agree with the reference pair", [&] {
    const Matrix u = standard_premeasurement_unitary();
    const Matrix logged = principal_log_hamiltonian(u);
    std::string failed = expect_le("log error", testutil::max_err(logged, h), 1e-10);
    if (!failed.empty()) return failed;
    return expect_le("exp error", testutil::max_err(unitary_exp(logged, 1.0), u), 1e-10);
  });

  harness.criterion(3, "pauli decomposition has exactly the six reference coefficients", [&] {
    const PauliDecomposition d = pauli_decompose(h);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        double expected = 0.0;
        if (a == 0 && b == 0) expected = unit;
        else if (a == 1 && b == 0) expected = -unit;
        else if (a == 2 && b == 0) expected = -unit;
        else if (a == 0 && b == 2) expected = unit;
        else if (a == 1 && b == 2) expected = -unit;
        else if (a == 2 && b == 2) expected = unit;
        worst = std::max(worst, std::abs(d(a, b) - expected));
      }
    }
    return expect_le("coefficient error", worst, 1e-12);
  });

  harness.criterion(4, "collapse at the first instant gains h/8 on average", [&] {
    const EnergyLedger ledger = energy_balance(scheme, 1.0);
    std::string failed = expect_le("|e_pre|", std::abs(ledger.e_pre), 1e-10);
    if (!failed.empty()) return failed;
    failed = expect_le("e_post relative error", std::abs(ledger.e_post - unit) / unit, 1e-9);
    if (!failed.empty()) return failed;
    return expect_le("delta relative error", std::abs(ledger.delta - unit) / unit, 1e-9);
  });

  harness.criterion(5, "exchanged-pointer instant shows the same discrepancy", [&] {
    std::string failed =
        expect_le("three-tick propagator error",
                  testutil::max_err(unitary_exp(h, 3.0), testutil::golden_unitary_three_ticks()),
                  1e-10);
    if (!failed.empty()) return failed;
    const EnergyLedger ledger = energy_balance(scheme, 3.0);
    return expect_le("e_post relative error", std::abs(ledger.e_post - unit) / unit, 1e-9);
  });

  harness.criterion(6, "grid scan isolates exactly the two correlation instants", [&] {
    const auto instants = scan_premeasurement(scheme, 0.0, 4.0, 1e-3, 1e-6);
    if (instants.size() != 2) {
      return "found " + std::to_string(instants.size()) + " instants instead of 2";
    }
    std::string failed = expect_le("first instant offset", std::abs(instants[0].first - 1.0), 1e-3);
    if (!failed.empty()) return failed;
    return expect_le("second instant offset", std::abs(instants[1].first - 3.0), 1e-3);
  });

  harness.criterion(7, "post-measurement ensemble is diag(1/2, 0, 0, 1/2)", [&] {
    const DensityMatrix rho = ensemble_density(project(evolve(scheme, 1.0), scheme.pointer));
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    return expect_le("density error", testutil::max_err(rho.matrix, expected), 1e-10);
  });

  harness.criterion(8, "repeated cycles accumulate n times h/8", [&] {
    for (const int n : {1, 10, 100}) {
      const double cumulative = cycle_ledger(scheme, 1.0, n);
      const std::string failed = expect_le(
          "cycle error", std::abs(cumulative - n * unit), static_cast<double>(n) * 1e-9);
      if (!failed.empty()) return failed + " at n=" + std::to_string(n);
    }
    return std::string{};
  });

  harness.criterion(9, "randomized property suite (5 invariants x 200 cases)", [&] {
    std::mt19937_64 rng(1138);
    std::uniform_real_distribution<double> time(0.0, 4.0);
    std::uniform_real_distribution<double> angle(-3.2, 3.2);

    for (int trial = 0; trial < 200; ++trial) {
      // energy expectation is constant under the unitary flow
      const MeasurementScheme random = random_scheme(rng);
      const double reference = expectation(random.initial_state, random.hamiltonian);
      const double drifted = expectation(evolve(random, time(rng)), random.hamiltonian);
      std::string failed = expect_le("energy drift", std::abs(drifted - reference), 1e-9);
      if (!failed.empty()) return failed;

      // ledger identity and probability sum
      const CollapseAnalysis analysis = analyze_collapse(random, time(rng));
      failed = expect_le(
          "ledger identity residual",
          std::abs(analysis.ledger.e_pre - (analysis.ledger.e_post + analysis.ledger.cross)),
          1e-9);
      if (!failed.empty()) return failed;
      double total = 0.0;
      for (const auto& outcome : analysis.outcomes) total += outcome.probability;
      failed = expect_le("probability sum deviation", std::abs(total - 1.0), 1e-10);
      if (!failed.empty()) return failed;

      // exp/log roundtrip under the branch precondition
      const Matrix generator = testutil::random_log_branch_hermitian(4, rng);
      failed = expect_le(
          "roundtrip error",
          testutil::max_err(principal_log_hamiltonian(unitary_exp(generator, 1.0)), generator),
          1e-8);
      if (!failed.empty()) return failed;

      // pointer-diagonal generators conserve the ensemble energy
      const PointerBasis pointer = QubitBasis::from_bloch(angle(rng), angle(rng));
      Matrix diagonal = Matrix::Zero(4, 4);
      const Eigen::Vector2cd* vectors[2] = {&pointer.v0, &pointer.v1};
      for (int j = 0; j < 2; ++j) {
        diagonal += tensor_product(testutil::random_hermitian(2, rng),
                                   (*vectors[j]) * vectors[j]->adjoint());
      }
      const MeasurementScheme commuting{0.5 * (diagonal + diagonal.adjoint()),
                                        QubitBasis::canonical(), pointer,
                                        PureState(testutil::random_state(4, rng)),
                                        {1.0}};
      failed = expect_le("commuting-collapse delta",
                         std::abs(energy_balance(commuting, time(rng)).delta), 1e-9);
      if (!failed.empty()) return failed;
    }
    return std::string{};
  });

  harness.criterion(10, "non-demolition coupling keeps the probe energy constant", [&] {
    const Matrix h_env = 0.25 * planck_h * sigma(3);
    const Matrix h_total = qnd_extend(h, h_env, tensor_product(h, sigma(1)));
    const Matrix probe = tensor_product(h, Matrix::Identity(2, 2));

    Vector env0(2);
    env0 << 1.0, 0.0;
    Vector initial(8);
    for (int a = 0; a < 4; ++a) {
      initial[2 * a] = scheme.initial_state.amplitudes[a] * env0[0];
      initial[2 * a + 1] = scheme.initial_state.amplitudes[a] * env0[1];
    }
    const Propagator propagator(h_total);
    double lo = 1e300, hi = -1e300;
    for (double t = 0.0; t <= 4.0 + 1e-12; t += 0.01) {
      const Vector state = propagator.apply(initial, t);
      const double value = state.dot(probe * state).real();
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    std::string failed = expect_le("probe energy drift", hi - lo, 1e-9);
    if (!failed.empty()) return failed;

    try {
      qnd_extend(h, h_env,
                 tensor_product(tensor_product(sigma(1), Matrix::Identity(2, 2)), sigma(1)));
      return std::string("non-commuting coupling was accepted");
    } catch (const NotQND&) {
      return std::string{};
    }
  });

  harness.criterion(11, "CLI reproduce exits clean and reports delta_h 0.125 twice", [&] {
    const auto json_path =
        std::filesystem::temp_directory_path() / "qcollapse_acceptance_reproduce.json";
    const std::string command =
        std::string(QCOLLAPSE_CLI_PATH) + " reproduce --json " + json_path.string() +
        " > /dev/null";
    const int status = std::system(command.c_str());
    if (status != 0) {
      return "exit status " + std::to_string(status);
    }
    std::ifstream in(json_path);
    if (!in) return std::string("missing JSON report");
    nlohmann::json report;
    in >> report;
    std::filesystem::remove(json_path);

    if (!report.at("all_passed").get<bool>()) return std::string("report not all_passed");
    const auto& events = report.at("collapse");
    if (events.size() != 2) return std::string("expected two collapse events");
    for (const auto& event : events) {
      const double delta_h = event.at("delta_h").get<double>();
      const std::string failed = expect_le("delta_h error", std::abs(delta_h - 0.125), 1e-9);
      if (!failed.empty()) return failed;
    }
    return std::string{};
  });

  if (harness.failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return EXIT_SUCCESS;
  }
  std::printf("acceptance: %d criteria FAILED\n", harness.failures);
  return EXIT_FAILURE;
}
