#pragma once

#include <array>
#include <vector>

#include "qcollapse/matrix.hpp"

namespace qcollapse {

/// Normalized state vector. The checking constructor demands unit norm within
/// 1e-10; `normalized` rescales arbitrary input first.
struct PureState {
  Vector amplitudes;

  explicit PureState(Vector a);
  static PureState normalized(Vector a);

  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Hermitian, unit-trace, positive-semidefinite matrix (eigenvalue floor -1e-10).
struct DensityMatrix {
  Matrix matrix;

  explicit DensityMatrix(Matrix m);

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Orthonormal pair of single-qubit vectors; doubles as the system basis and
/// the detector pointer basis.
struct QubitBasis {
  Eigen::Vector2cd v0, v1;

  static QubitBasis canonical();
  /// v0 = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, v1 its orthogonal complement.
  static QubitBasis from_bloch(double theta, double phi);
  /// Renormalizes the inputs and enforces orthogonality at 1e-12.
  static QubitBasis from_vectors(Eigen::Vector2cd a, Eigen::Vector2cd b);
};

using PointerBasis = QubitBasis;

inline constexpr std::array<char, 4> pauli_axis_names = {'I', 'X', 'Y', 'Z'};

/// sigma(0..3) = I, X, Y, Z as 2x2 matrices.
const Matrix& sigma(int axis);

/// Real coefficients of a two-qubit Hermitian operator over the sixteen
/// products sigma_a (x) sigma_b; first index system, second detector. Units of
/// energy (natural units).
struct PauliDecomposition {
  std::array<std::array<double, 4>, 4> coeff{};

  double& operator()(int a, int b) { return coeff[a][b]; }
  double operator()(int a, int b) const { return coeff[a][b]; }
};

/// System basis + detector pointer basis + generator + initial state +
/// scheduled collapse instants: everything one measurement run needs.
struct MeasurementScheme {
  Matrix hamiltonian;  // 4x4 Hermitian, natural units
  QubitBasis system_basis;
  PointerBasis pointer;
  PureState initial_state;
  std::vector<double> collapse_times;
};

double expectation(const PureState& state, const Matrix& a);
double expectation(const DensityMatrix& state, const Matrix& a);

/// coeff[a][b] = tr((sigma_a (x) sigma_b) H) / 4 for Hermitian 4x4 H.
PauliDecomposition pauli_decompose(const Matrix& h);
Matrix pauli_compose(const PauliDecomposition& d);

/// System-local, detector-local and cross terms; the identity-identity
/// coefficient rides with the system term. The three pieces sum back to the
/// composed operator.
struct HamiltonianTerms {
  Matrix system;       // terms sigma_a (x) I, including the constant
  Matrix detector;     // terms I (x) sigma_b, b != I
  Matrix interaction;  // everything else
};
HamiltonianTerms split_terms(const PauliDecomposition& d);

/// The canonical two-qubit example shipped with the library: equal-weight
/// system superposition against pointer |0>, the swap-with-phase generator,
/// one collapse tick scheduled.
MeasurementScheme build_standard_scheme();

/// Generator of the standard scheme (4x4, natural units).
Matrix standard_hamiltonian();

/// One-tick propagator of the standard scheme.
Matrix standard_premeasurement_unitary();

}  // namespace qcollapse
