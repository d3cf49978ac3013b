#include "qcollapse/dynamics.hpp"

#include <cmath>

namespace qcollapse {

Propagator::Propagator(const Matrix& hamiltonian)
    : eig_(spectral_decompose(hamiltonian, MatrixKind::hermitian)) {}

Vector Propagator::apply(const Vector& state, double t) const {
  if (state.size() != eig_.eigenvectors.rows()) {
    throw DimensionMismatch("Propagator: state dimension " + std::to_string(state.size()) +
                            " does not match generator dimension " +
                            std::to_string(eig_.eigenvectors.rows()));
  }
  Vector coords = eig_.eigenvectors.adjoint() * state;
  for (Eigen::Index k = 0; k < coords.size(); ++k) {
    coords[k] *= std::exp(Complex(0, -eig_.eigenvalues[k].real() * t));
  }
  return eig_.eigenvectors * coords;
}

PureState evolve(const MeasurementScheme& scheme, double t) {
  const Propagator propagator(scheme.hamiltonian);
  return PureState(propagator.apply(scheme.initial_state.amplitudes, t));
}

namespace {

CorrelationReport make_report(const Eigen::Matrix2cd& c, double tol) {
  CorrelationReport report;
  report.coefficients = c;

  const double mass_identity = std::norm(c(0, 0)) + std::norm(c(1, 1));
  const double mass_swap = std::norm(c(0, 1)) + std::norm(c(1, 0));
  const double total = mass_identity + mass_swap;
  const double off = total - std::max(mass_identity, mass_swap);
  report.score = std::clamp(1.0 - std::sqrt(std::max(0.0, off)), 0.0, 1.0);

  int row_hits[2] = {0, 0};
  int col_hits[2] = {0, 0};
  int hit_col[2] = {-1, -1};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(c(i, j)) >= tol) {
        ++row_hits[i];
        ++col_hits[j];
        hit_col[i] = j;
      }
    }
  }
  report.is_premeasurement = row_hits[0] == 1 && row_hits[1] == 1 && col_hits[0] == 1 &&
                             col_hits[1] == 1;
  if (report.is_premeasurement) {
    report.pairing = std::array<int, 2>{hit_col[0], hit_col[1]};
  }
  return report;
}

}  // namespace

CorrelationReport correlation_report(const PureState& state, const QubitBasis& system,
                                     const PointerBasis& pointer, double tol) {
  if (state.dim() != 4) {
    throw DimensionMismatch("correlation_report: state dimension must be 4, got " +
                            std::to_string(state.dim()));
  }
  const Eigen::Vector2cd* sys[2] = {&system.v0, &system.v1};
  const Eigen::Vector2cd* det[2] = {&pointer.v0, &pointer.v1};
  Eigen::Matrix2cd c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex overlap = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          overlap += std::conj((*sys[i])(a) * (*det[j])(b)) * state.amplitudes[2 * a + b];
        }
      }
      c(i, j) = overlap;
    }
  }
  return make_report(c, tol);
}

std::vector<std::pair<double, CorrelationReport>> scan_premeasurement(
    const MeasurementScheme& scheme, double t_start, double t_end, double step, double tol) {
  if (step <= 0.0) {
    throw Error("scan_premeasurement: step must be positive");
  }
  const Propagator propagator(scheme.hamiltonian);

  struct GridHit {
    double t;
    CorrelationReport report;
  };
  std::vector<std::pair<double, CorrelationReport>> instants;
  std::vector<GridHit> run;

  auto flush_run = [&] {
    if (run.empty()) return;
    std::size_t best = 0;
    for (std::size_t i = 1; i < run.size(); ++i) {
      if (run[i].report.score > run[best].report.score) best = i;
    }
    const double midpoint = 0.5 * (run.front().t + run.back().t);
    instants.emplace_back(midpoint, run[best].report);
    run.clear();
  };

  for (std::size_t k = 0;; ++k) {
    const double t = t_start + static_cast<double>(k) * step;
    if (t >= t_end) break;
    const PureState state(propagator.apply(scheme.initial_state.amplitudes, t));
    CorrelationReport report = correlation_report(state, scheme.system_basis, scheme.pointer, tol);
    if (report.is_premeasurement) {
      run.push_back({t, std::move(report)});
    } else {
      flush_run();
    }
  }
  flush_run();
  return instants;
}

}  // namespace qcollapse
