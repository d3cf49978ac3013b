#include "qcollapse/matrix.hpp"

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace qcollapse {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch(std::string(what) + ": expected a nonempty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Simultaneous eigenbasis of the commuting Hermitian pair (re, im).
// Alternates refinement passes: diagonalize one operator restricted to a
// cluster, split the cluster by eigenvalue gaps, hand the pieces to the other
// operator. Tolerances shrink so that pairs separated at coarse levels keep a
// gap large enough for accurate eigenvectors, while clusters surviving all
// passes are degenerate in both operators and any orthonormal basis serves.
Matrix simultaneous_eigenbasis(const Matrix& re, const Matrix& im) {
  const Eigen::Index n = re.rows();
  Matrix basis = Matrix::Identity(n, n);

  struct Range {
    Eigen::Index begin, size;
  };
  std::vector<Range> pending{{0, n}};
  const std::array<const Matrix*, 4> ops = {&re, &im, &re, &im};
  const std::array<double, 4> gap_tol = {1e-5, 1e-8, 1e-12, 1e-12};

  for (int level = 0; level < 4 && !pending.empty(); ++level) {
    std::vector<Range> next;
    for (const Range& r : pending) {
      auto block = basis.middleCols(r.begin, r.size);
      Matrix projected = block.adjoint() * (*ops[level]) * block;
      projected = 0.5 * (projected + projected.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> solver(projected);
      block = (block * solver.eigenvectors()).eval();

      const auto& values = solver.eigenvalues();
      Eigen::Index cluster_start = 0;
      for (Eigen::Index i = 1; i <= r.size; ++i) {
        if (i == r.size || values[i] - values[i - 1] > gap_tol[level]) {
          if (i - cluster_start > 1) {
            next.push_back({r.begin + cluster_start, i - cluster_start});
          }
          cluster_start = i;
        }
      }
    }
    pending = std::move(next);
  }

  // final modified Gram-Schmidt pass
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      basis.col(j) -= basis.col(i).dot(basis.col(j)) * basis.col(i);
    }
    basis.col(j).normalize();
  }
  return basis;
}

}  // namespace

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const Matrix residual = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return max_abs(residual) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const Matrix& a, MatrixKind kind, double tol) {
  require_square(a, "spectral_decompose");

  if (kind == MatrixKind::hermitian) {
    if (!is_hermitian(a, tol)) {
      throw NotNormal("spectral_decompose: matrix is not Hermitian at tolerance " +
                      std::to_string(tol));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    SpectralDecomposition result;
    result.eigenvalues = solver.eigenvalues().cast<Complex>();
    result.eigenvectors = solver.eigenvectors();
    return result;
  }

  if (!is_unitary(a, tol)) {
    throw NotNormal("spectral_decompose: matrix is not unitary at tolerance " +
                    std::to_string(tol));
  }
  const Matrix re = 0.5 * (a + a.adjoint());
  const Matrix im = Complex(0, -0.5) * (a - a.adjoint());

  SpectralDecomposition result;
  result.eigenvectors = simultaneous_eigenbasis(re, im);
  result.eigenvalues.resize(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    result.eigenvalues[k] = result.eigenvectors.col(k).dot(a * result.eigenvectors.col(k));
  }
  return result;
}

Matrix unitary_exp(const Matrix& hamiltonian, double t) {
  const SpectralDecomposition eig = spectral_decompose(hamiltonian, MatrixKind::hermitian);
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::exp(Complex(0, -eig.eigenvalues[k].real() * t));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix principal_log_hamiltonian(const Matrix& u) {
  const SpectralDecomposition eig = spectral_decompose(u, MatrixKind::unitary);
  Eigen::VectorXd energies(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) {
    const double theta = std::arg(eig.eigenvalues[k]);
    // branch cut: an eigenphase of +-pi (eigenvalue -1) yields energy +pi
    constexpr double cut_tol = 1e-12;
    energies[k] = (std::numbers::pi - std::abs(theta) <= cut_tol) ? std::numbers::pi : -theta;
  }
  Matrix h = eig.eigenvectors * energies.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (h + h.adjoint());
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("commutator: operands are " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  return a * b - b * a;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix result(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      result.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return result;
}

}  // namespace qcollapse
