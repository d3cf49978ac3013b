#include <algorithm>
#include <random>

#include <doctest.h>

#include "qcollapse/matrix.hpp"
#include "qcollapse/model.hpp"
#include "testutil.hpp"

using namespace qcollapse;
using testutil::golden_hamiltonian;
using testutil::golden_unitary;
using testutil::golden_unitary_three_ticks;
using testutil::kI;
using testutil::max_err;

namespace {

// sorted-by-real-then-imag multiset comparison for spectra
double spectrum_err(Vector actual, std::vector<Complex> expected) {
  auto less = [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  std::vector<Complex> got(actual.data(), actual.data() + actual.size());
  std::sort(got.begin(), got.end(), less);
  std::sort(expected.begin(), expected.end(), less);
  double worst = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) {
    worst = std::max(worst, std::abs(got[k] - expected[k]));
  }
  return worst;
}

}  // namespace

TEST_CASE("unitary and hermitian predicates") {
  CHECK(is_unitary(Matrix::Identity(4, 4)));
  CHECK(is_unitary(golden_unitary()));
  CHECK_FALSE(is_unitary(2.0 * Matrix::Identity(4, 4)));
  CHECK(is_hermitian(golden_hamiltonian()));
  CHECK_FALSE(is_hermitian(golden_unitary()));
  CHECK_FALSE(is_unitary(Matrix::Zero(3, 2)));
}

TEST_CASE("spectral decomposition of the identity") {
  const auto eig = spectral_decompose(Matrix::Identity(4, 4), MatrixKind::unitary);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(eig.eigenvalues[k] - 1.0) < 1e-12);
  }
  CHECK(max_err(eig.reconstruct(), Matrix::Identity(4, 4)) < 1e-10);
}

TEST_CASE("spectral decomposition of an already-diagonal hermitian matrix") {
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 1.0, 2.0, 3.0, 4.0;
  const auto eig = spectral_decompose(d, MatrixKind::hermitian);
  CHECK(spectrum_err(eig.eigenvalues, {1.0, 2.0, 3.0, 4.0}) < 1e-12);
  CHECK((eig.eigenvectors.cwiseAbs() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("golden unitary has the four fourth roots of unity as spectrum") {
  const Matrix u = golden_unitary();
  const std::vector<Complex> roots = {1.0, kI, -1.0, -kI};

  // independent oracle: characteristic polynomial from matrix traces alone
  const auto poly = testutil::characteristic_polynomial(u);
  for (const Complex& root : roots) {
    CHECK(std::abs(testutil::evaluate_polynomial(poly, root)) < 1e-12);
  }

  const auto eig = spectral_decompose(u, MatrixKind::unitary);
  CHECK(spectrum_err(eig.eigenvalues, roots) < 1e-10);
}

TEST_CASE("spectral decomposition rejects mis-declared matrices") {
  CHECK_THROWS_AS(spectral_decompose(golden_hamiltonian(), MatrixKind::unitary), NotNormal);
  CHECK_THROWS_AS(spectral_decompose(golden_unitary(), MatrixKind::hermitian), NotNormal);
}

TEST_CASE("spectral reconstruction on random and structured matrices") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    for (const int dim : {2, 4, 8}) {
      const Matrix h = testutil::random_hermitian(dim, rng);
      const auto eh = spectral_decompose(h, MatrixKind::hermitian);
      CHECK(max_err(eh.reconstruct(), h) < 1e-10);
      CHECK(max_err(eh.eigenvectors.adjoint() * eh.eigenvectors, Matrix::Identity(dim, dim)) <
            1e-10);
      for (int k = 0; k < dim; ++k) CHECK(std::abs(eh.eigenvalues[k].imag()) < 1e-10);

      const Matrix u = testutil::random_unitary(dim, rng);
      const auto eu = spectral_decompose(u, MatrixKind::unitary);
      CHECK(max_err(eu.reconstruct(), u) < 1e-10);
      CHECK(max_err(eu.eigenvectors.adjoint() * eu.eigenvectors, Matrix::Identity(dim, dim)) <
            1e-10);
      for (int k = 0; k < dim; ++k) CHECK(std::abs(std::abs(eu.eigenvalues[k]) - 1.0) < 1e-10);
    }
  }

  // degenerate spectra with paired real parts
  for (const Matrix& m : {tensor_product(sigma(1), sigma(1)),
                          tensor_product(sigma(3), Matrix::Identity(2, 2)), golden_unitary(),
                          golden_unitary_three_ticks()}) {
    const auto eig = spectral_decompose(m, MatrixKind::unitary);
    CHECK(max_err(eig.reconstruct(), m) < 1e-10);
    CHECK(max_err(eig.eigenvectors.adjoint() * eig.eigenvectors, Matrix::Identity(4, 4)) < 1e-10);
  }
}

TEST_CASE("unitary exponential golden values") {
  const Matrix h = golden_hamiltonian();
  CHECK(max_err(unitary_exp(Matrix::Zero(4, 4), 2.7), Matrix::Identity(4, 4)) < 1e-12);
  CHECK(max_err(unitary_exp(h, 1.0), golden_unitary()) < 1e-10);
  CHECK(max_err(unitary_exp(h, 3.0), golden_unitary_three_ticks()) < 1e-10);
  CHECK(max_err(unitary_exp(h, 4.0), Matrix::Identity(4, 4)) < 1e-10);

  // the three-tick matrix is also the cube of the one-tick matrix
  const Matrix u = golden_unitary();
  CHECK(max_err(u * u * u, golden_unitary_three_ticks()) == 0.0);
  CHECK(max_err(u * u * u * u, Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("unitary exponential agrees with a Taylor-series oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix h = testutil::random_hermitian(4, rng);
    std::uniform_real_distribution<double> time(0.0, 4.0);
    const double t = time(rng);
    CHECK(max_err(unitary_exp(h, t), testutil::expm_taylor(Complex(0, -t) * h)) < 1e-12);
  }
}

TEST_CASE("unitary exponential properties: unitarity and the group law") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> time(0.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix h = testutil::random_hermitian(4, rng);
    const double t1 = time(rng), t2 = time(rng);
    const Matrix u1 = unitary_exp(h, t1);
    CHECK(is_unitary(u1, 1e-9));
    CHECK(max_err(unitary_exp(h, t1 + t2), u1 * unitary_exp(h, t2)) < 1e-9);
  }
  CHECK_THROWS_AS(unitary_exp(golden_unitary(), 1.0), NotNormal);
}

TEST_CASE("principal log golden values") {
  CHECK(max_abs(principal_log_hamiltonian(Matrix::Identity(4, 4))) < 1e-12);

  const Matrix h = principal_log_hamiltonian(golden_unitary());
  CHECK(is_hermitian(h, 1e-10));
  CHECK(max_err(h, golden_hamiltonian()) < 1e-10);

  // spectrum in units of h: apply the branch map to the oracle spectrum
  // {1, i, -1, -i} -> {0, -1/4, 1/2, 1/4}
  const auto eig = spectral_decompose(h, MatrixKind::hermitian);
  CHECK(spectrum_err(eig.eigenvalues,
                     {0.0, planck_h / 4.0, planck_h / 2.0, -planck_h / 4.0}) < 1e-10);
}

TEST_CASE("principal log branch maps an eigenvalue of minus one to plus pi") {
  Matrix u = -Matrix::Identity(2, 2);
  const Matrix h = principal_log_hamiltonian(u);
  const auto eig = spectral_decompose(h, MatrixKind::hermitian);
  CHECK(std::abs(eig.eigenvalues[0].real() - std::numbers::pi) < 1e-12);
  CHECK(std::abs(eig.eigenvalues[1].real() - std::numbers::pi) < 1e-12);
  CHECK(max_err(unitary_exp(h, 1.0), u) < 1e-12);
}

TEST_CASE("exp/log roundtrips") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    // log(exp(H)) = H whenever the spectrum stays inside the branch
    const Matrix h = testutil::random_log_branch_hermitian(4, rng);
    CHECK(max_err(principal_log_hamiltonian(unitary_exp(h, 1.0)), h) < 1e-8);

    // exp(log(U)) = U with no precondition
    const Matrix u = testutil::random_unitary(4, rng);
    CHECK(max_err(unitary_exp(principal_log_hamiltonian(u), 1.0), u) < 1e-9);
  }
  CHECK_THROWS_AS(principal_log_hamiltonian(golden_hamiltonian()), NotNormal);
}

TEST_CASE("commutator algebra") {
  CHECK(max_err(commutator(sigma(1), sigma(2)), 2.0 * kI * sigma(3)) < 1e-14);
  CHECK(max_abs(commutator(golden_hamiltonian(), golden_unitary())) < 1e-10);
  const Matrix a = golden_hamiltonian();
  CHECK(max_abs(commutator(a, a)) == 0.0);
  CHECK_THROWS_AS(commutator(sigma(1), Matrix::Identity(4, 4)), DimensionMismatch);
}

TEST_CASE("tensor product conventions") {
  CHECK(max_err(tensor_product(Matrix::Identity(2, 2), Matrix::Identity(2, 2)),
                Matrix::Identity(4, 4)) == 0.0);

  Matrix yy(4, 4);
  yy << 0, 0, 0, -1,
      0, 0, 1, 0,
      0, 1, 0, 0,
      -1, 0, 0, 0;
  CHECK(max_err(tensor_product(sigma(2), sigma(2)), yy) < 1e-14);

  // second system state with second detector state lands on the last axis
  Matrix phi2(2, 1), psi1(2, 1);
  phi2 << 0.0, 1.0;
  psi1 << 0.0, 1.0;
  const Matrix product = tensor_product(phi2, psi1);
  CHECK(product.rows() == 4);
  CHECK(std::abs(product(3, 0) - 1.0) == 0.0);
  CHECK(product.col(0).head(3).cwiseAbs().maxCoeff() == 0.0);
}
