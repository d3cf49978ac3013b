#include "qcollapse/model.hpp"

#include <cmath>

namespace qcollapse {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_dim(const Matrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                            std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

double real_expectation(const Complex& value, const char* what) {
  if (std::abs(value.imag()) > 1e-10) {
    throw NotHermitian(std::string(what) + ": imaginary residue " +
                       std::to_string(value.imag()) + " exceeds 1e-10");
  }
  return value.real();
}

}  // namespace

PureState::PureState(Vector a) : amplitudes(std::move(a)) {
  if (amplitudes.size() == 0) {
    throw DimensionMismatch("PureState: empty amplitude vector");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw Error("PureState: amplitudes are not normalized (norm " +
                std::to_string(amplitudes.norm()) + ")");
  }
}

PureState PureState::normalized(Vector a) {
  const double norm = a.norm();
  if (norm < 1e-12) {
    throw Error("PureState: cannot normalize a (near-)zero vector");
  }
  return PureState(a / norm);
}

DensityMatrix::DensityMatrix(Matrix m) : matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw DimensionMismatch("DensityMatrix: matrix must be square");
  }
  if (!is_hermitian(matrix, 1e-10)) {
    throw NotHermitian("DensityMatrix: matrix is not Hermitian at 1e-10");
  }
  if (std::abs(matrix.trace().real() - 1.0) > 1e-10 || std::abs(matrix.trace().imag()) > 1e-10) {
    throw Error("DensityMatrix: trace deviates from one beyond 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw Error("DensityMatrix: negative eigenvalue " +
                std::to_string(solver.eigenvalues().minCoeff()));
  }
}

QubitBasis QubitBasis::canonical() {
  QubitBasis basis;
  basis.v0 << 1.0, 0.0;
  basis.v1 << 0.0, 1.0;
  return basis;
}

QubitBasis QubitBasis::from_bloch(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex phase = std::exp(kI * phi);
  QubitBasis basis;
  basis.v0 << Complex(c), phase * s;
  basis.v1 << -std::conj(phase) * s, Complex(c);
  return basis;
}

QubitBasis QubitBasis::from_vectors(Eigen::Vector2cd a, Eigen::Vector2cd b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na < 1e-12 || nb < 1e-12) {
    throw Error("QubitBasis: basis vector has (near-)zero norm");
  }
  a /= na;
  b /= nb;
  if (std::abs(a.dot(b)) > 1e-12) {
    throw Error("QubitBasis: vectors are not orthogonal at 1e-12 (overlap " +
                std::to_string(std::abs(a.dot(b))) + ")");
  }
  QubitBasis basis;
  basis.v0 = a;
  basis.v1 = b;
  return basis;
}

const Matrix& sigma(int axis) {
  static const std::array<Matrix, 4> paulis = [] {
    std::array<Matrix, 4> p;
    p[0] = Matrix::Identity(2, 2);
    p[1] = Matrix(2, 2);
    p[1] << 0, 1, 1, 0;
    p[2] = Matrix(2, 2);
    p[2] << 0, -kI, kI, 0;
    p[3] = Matrix(2, 2);
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  if (axis < 0 || axis > 3) {
    throw DimensionMismatch("sigma: axis index must be in [0, 3]");
  }
  return paulis[axis];
}

double expectation(const PureState& state, const Matrix& a) {
  if (a.rows() != state.dim() || a.cols() != state.dim()) {
    throw DimensionMismatch("expectation: operator is " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " but state has dimension " +
                            std::to_string(state.dim()));
  }
  if (!is_hermitian(a, 1e-10)) {
    throw NotHermitian("expectation: operator is not Hermitian at 1e-10");
  }
  const Complex value = state.amplitudes.dot(a * state.amplitudes);
  return real_expectation(value, "expectation");
}

double expectation(const DensityMatrix& state, const Matrix& a) {
  if (a.rows() != state.dim() || a.cols() != state.dim()) {
    throw DimensionMismatch("expectation: operator is " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " but state has dimension " +
                            std::to_string(state.dim()));
  }
  if (!is_hermitian(a, 1e-10)) {
    throw NotHermitian("expectation: operator is not Hermitian at 1e-10");
  }
  return real_expectation((state.matrix * a).trace(), "expectation");
}

PauliDecomposition pauli_decompose(const Matrix& h) {
  require_dim(h, 4, "pauli_decompose");
  if (!is_hermitian(h, 1e-10)) {
    throw NotHermitian("pauli_decompose: matrix is not Hermitian at 1e-10");
  }
  PauliDecomposition d;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      d(a, b) = (tensor_product(sigma(a), sigma(b)) * h).trace().real() / 4.0;
    }
  }
  return d;
}

Matrix pauli_compose(const PauliDecomposition& d) {
  Matrix h = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (d(a, b) != 0.0) {
        h += d(a, b) * tensor_product(sigma(a), sigma(b));
      }
    }
  }
  return h;
}

HamiltonianTerms split_terms(const PauliDecomposition& d) {
  HamiltonianTerms terms{Matrix::Zero(4, 4), Matrix::Zero(4, 4), Matrix::Zero(4, 4)};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (d(a, b) == 0.0) continue;
      const Matrix term = d(a, b) * tensor_product(sigma(a), sigma(b));
      if (b == 0) {
        terms.system += term;
      } else if (a == 0) {
        terms.detector += term;
      } else {
        terms.interaction += term;
      }
    }
  }
  return terms;
}

Matrix standard_hamiltonian() {
  // h/8 prefactor in natural units
  const double e = planck_h / 8.0;
  Matrix h(4, 4);
  h << 1.0, -kI, Complex(-1, 1), Complex(-1, 1),
      kI, 1.0, Complex(1, -1), Complex(-1, 1),
      Complex(-1, -1), Complex(1, 1), 1.0, -kI,
      Complex(-1, -1), Complex(-1, -1), kI, 1.0;
  return e * h;
}

Matrix standard_premeasurement_unitary() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 2) = 1.0;
  u(1, 3) = 1.0;
  u(2, 1) = -kI;
  u(3, 0) = kI;
  return u;
}

MeasurementScheme build_standard_scheme() {
  Vector initial(4);
  const double w = 1.0 / std::numbers::sqrt2;
  initial << w, 0.0, w, 0.0;
  return MeasurementScheme{
      standard_hamiltonian(),
      QubitBasis::canonical(),
      QubitBasis::canonical(),
      PureState(std::move(initial)),
      {1.0},
  };
}

}  // namespace qcollapse
