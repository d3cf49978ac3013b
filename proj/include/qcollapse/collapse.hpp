#pragma once

#include <vector>

#include "qcollapse/dynamics.hpp"
#include "qcollapse/model.hpp"

namespace qcollapse {

/// One branch of a projective collapse in the pointer basis.
struct CollapseOutcome {
  int branch;             // pointer index, 0 or 1
  double probability;     // Born weight
  PureState post_state;   // normalized projected state, phase inherited
  double branch_energy;   // <post|H|post>, filled by energy accounting
};

/// Energy bookkeeping for one collapse event (natural units). The expansion
/// identity e_pre = e_post + cross holds by construction.
struct EnergyLedger {
  double e_pre;    // expectation before collapse
  double e_post;   // probability-weighted branch energies
  double cross;    // interference contribution destroyed by collapse
  double delta;    // e_post - e_pre
};

/// Projects a four-dimensional state onto the detector pointer branches
/// (projectors I (x) |psi_j><psi_j|). Branches below prob_floor are omitted;
/// branch_energy is left at zero.
std::vector<CollapseOutcome> project(const PureState& state, const PointerBasis& pointer,
                                     double prob_floor = 1e-12);

/// rho = sum_i p_i |post_i><post_i|; throws ProbabilityLeak unless the
/// probabilities sum to one within 1e-10.
DensityMatrix ensemble_density(const std::vector<CollapseOutcome>& outcomes);

/// Full record of one evolve-and-collapse event.
struct CollapseAnalysis {
  PureState pre_state;
  std::vector<CollapseOutcome> outcomes;
  EnergyLedger ledger;
};

CollapseAnalysis analyze_collapse(const MeasurementScheme& scheme, double t_collapse);

/// Ledger for a collapse at t_collapse: evolve, project in the scheme's
/// pointer basis, compare the pre-collapse expectation with the branch
/// ensemble average.
EnergyLedger energy_balance(const MeasurementScheme& scheme, double t_collapse);

/// Cumulative energy discrepancy over n repetitions of evolve -> collapse ->
/// ideal reset; the reset itself is accounted at zero scheme-internal cost,
/// so the total is n times the single-shot delta.
double cycle_ledger(const MeasurementScheme& scheme, double t_collapse, int n_cycles);

/// H_total = H_sp (x) I_2 + I_4 (x) H_env + H_int for a system+probe coupled
/// to a one-qubit environment. The coupling must commute with H_sp (x) I_2
/// (max-norm at 1e-10); violations raise NotQND with the commutator norm.
Matrix qnd_extend(const Matrix& h_sp, const Matrix& h_env, const Matrix& h_int);

}  // namespace qcollapse
