#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "qcollapse/errors.hpp"

namespace qcollapse {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Natural units with hbar = 1 throughout: energies carry radians per time
/// tick and one quantum of h equals 2*pi. Reports divide by this constant so
/// that energies read in multiples of h.
inline constexpr double planck_h = 2.0 * std::numbers::pi_v<double>;

/// Largest entry magnitude (max norm).
double max_abs(const Matrix& m);

bool is_unitary(const Matrix& m, double tol = 1e-10);
bool is_hermitian(const Matrix& m, double tol = 1e-10);

enum class MatrixKind { unitary, hermitian };

/// Eigensystem of a normal matrix with orthonormal eigenvector columns.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

/// Diagonalizes a matrix declared unitary or Hermitian.
///
/// Hermitian input goes straight to a self-adjoint eigensolver. Unitary input
/// is split into the commuting Hermitian pair (U+U')/2 and (U-U')/(2i), which
/// are diagonalized simultaneously; degenerate subspaces are resolved by
/// re-diagonalizing the partner operator inside the subspace. Throws NotNormal
/// when the declared predicate fails at `tol`.
SpectralDecomposition spectral_decompose(const Matrix& a, MatrixKind kind, double tol = 1e-10);

/// exp(-i H t) for Hermitian H, computed spectrally.
Matrix unitary_exp(const Matrix& hamiltonian, double t);

/// Hermitian generator H = i log(U) with eigenvalues confined to (-pi, pi];
/// an eigenvalue of exactly -1 maps to +pi. Satisfies unitary_exp(H, 1) == U.
Matrix principal_log_hamiltonian(const Matrix& u);

Matrix commutator(const Matrix& a, const Matrix& b);

/// Kronecker product, first factor major: (a ⊗ b)(i*nb+k, j*nb+l) = a(i,j) b(k,l).
Matrix tensor_product(const Matrix& a, const Matrix& b);

}  // namespace qcollapse
