#include "qcollapse/collapse.hpp"

#include <cmath>

namespace qcollapse {

std::vector<CollapseOutcome> project(const PureState& state, const PointerBasis& pointer,
                                     double prob_floor) {
  if (state.dim() != 4) {
    throw DimensionMismatch("project: state dimension must be 4, got " +
                            std::to_string(state.dim()));
  }
  const Eigen::Vector2cd* vectors[2] = {&pointer.v0, &pointer.v1};
  std::vector<CollapseOutcome> outcomes;
  for (int j = 0; j < 2; ++j) {
    const Eigen::Vector2cd& w = *vectors[j];
    // (I (x) |w><w|) psi, written blockwise over the system index
    Complex overlap[2];
    for (int a = 0; a < 2; ++a) {
      overlap[a] = std::conj(w(0)) * state.amplitudes[2 * a] +
                   std::conj(w(1)) * state.amplitudes[2 * a + 1];
    }
    const double probability = std::norm(overlap[0]) + std::norm(overlap[1]);
    if (probability < prob_floor) continue;

    Vector branch(4);
    for (int a = 0; a < 2; ++a) {
      branch[2 * a] = overlap[a] * w(0);
      branch[2 * a + 1] = overlap[a] * w(1);
    }
    outcomes.push_back({j, probability, PureState(branch / std::sqrt(probability)), 0.0});
  }
  if (outcomes.empty()) {
    throw DegenerateState("project: every branch fell below the probability floor");
  }
  return outcomes;
}

DensityMatrix ensemble_density(const std::vector<CollapseOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw ProbabilityLeak("ensemble_density: no outcomes supplied");
  }
  double total = 0.0;
  for (const CollapseOutcome& outcome : outcomes) total += outcome.probability;
  if (std::abs(total - 1.0) > 1e-10) {
    throw ProbabilityLeak("ensemble_density: probabilities sum to " + std::to_string(total));
  }
  const int dim = outcomes.front().post_state.dim();
  Matrix rho = Matrix::Zero(dim, dim);
  for (const CollapseOutcome& outcome : outcomes) {
    rho += outcome.probability *
           (outcome.post_state.amplitudes * outcome.post_state.amplitudes.adjoint());
  }
  return DensityMatrix(rho);
}

CollapseAnalysis analyze_collapse(const MeasurementScheme& scheme, double t_collapse) {
  PureState pre = evolve(scheme, t_collapse);
  std::vector<CollapseOutcome> outcomes = project(pre, scheme.pointer);

  EnergyLedger ledger{};
  ledger.e_pre = expectation(pre, scheme.hamiltonian);
  ledger.e_post = 0.0;
  for (CollapseOutcome& outcome : outcomes) {
    outcome.branch_energy = expectation(outcome.post_state, scheme.hamiltonian);
    ledger.e_post += outcome.probability * outcome.branch_energy;
  }
  ledger.cross = ledger.e_pre - ledger.e_post;
  ledger.delta = ledger.e_post - ledger.e_pre;
  return CollapseAnalysis{std::move(pre), std::move(outcomes), ledger};
}

EnergyLedger energy_balance(const MeasurementScheme& scheme, double t_collapse) {
  return analyze_collapse(scheme, t_collapse).ledger;
}

double cycle_ledger(const MeasurementScheme& scheme, double t_collapse, int n_cycles) {
  if (n_cycles < 0) {
    throw Error("cycle_ledger: cycle count must be non-negative");
  }
  if (n_cycles == 0) return 0.0;
  return static_cast<double>(n_cycles) * energy_balance(scheme, t_collapse).delta;
}

Matrix qnd_extend(const Matrix& h_sp, const Matrix& h_env, const Matrix& h_int) {
  if (h_sp.rows() != 4 || h_sp.cols() != 4) {
    throw DimensionMismatch("qnd_extend: system+probe Hamiltonian must be 4x4");
  }
  if (h_env.rows() != 2 || h_env.cols() != 2) {
    throw DimensionMismatch("qnd_extend: environment Hamiltonian must be 2x2");
  }
  if (h_int.rows() != 8 || h_int.cols() != 8) {
    throw DimensionMismatch("qnd_extend: interaction Hamiltonian must be 8x8");
  }
  for (const Matrix* m : {&h_sp, &h_env, &h_int}) {
    if (!is_hermitian(*m, 1e-10)) {
      throw NotHermitian("qnd_extend: all Hamiltonians must be Hermitian at 1e-10");
    }
  }
  const Matrix probe = tensor_product(h_sp, Matrix::Identity(2, 2));
  const double norm = max_abs(commutator(probe, h_int));
  if (norm > 1e-10) {
    throw NotQND(norm);
  }
  return probe + tensor_product(Matrix::Identity(4, 4), h_env) + h_int;
}

}  // namespace qcollapse
