#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcollapse/model.hpp"

namespace qcollapse {

/// System-detector correlation snapshot: c(i, j) = <phi_i (x) psi_j | state>.
/// A premeasurement instant is one where the magnitude matrix has permutation
/// support (exactly one entry at or above the threshold per row and column).
struct CorrelationReport {
  Eigen::Matrix2cd coefficients;
  bool is_premeasurement = false;
  /// pairing[i] = detector index correlated with system state i, when premeasurement.
  std::optional<std::array<int, 2>> pairing;
  /// 1 - sqrt(off-pattern mass) for the mass-maximizing permutation; 1 at
  /// perfect correlation, ties broken toward the identity pairing.
  double score = 0.0;
};

/// Reusable propagator: caches the spectral decomposition of the generator.
class Propagator {
 public:
  explicit Propagator(const Matrix& hamiltonian);

  Vector apply(const Vector& state, double t) const;

 private:
  SpectralDecomposition eig_;
};

/// State of the scheme after evolving the initial state for t ticks.
PureState evolve(const MeasurementScheme& scheme, double t);

CorrelationReport correlation_report(const PureState& state, const QubitBasis& system,
                                     const PointerBasis& pointer, double tol);

/// Grid scan over [t_start, t_end) flagging premeasurement instants. Adjacent
/// flagged grid points coalesce into one instant reported at the run midpoint,
/// carrying the best-scoring report of the run.
std::vector<std::pair<double, CorrelationReport>> scan_premeasurement(
    const MeasurementScheme& scheme, double t_start, double t_end, double step, double tol);

}  // namespace qcollapse
