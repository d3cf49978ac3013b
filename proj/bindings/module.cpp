#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcollapse/collapse.hpp"
#include "qcollapse/dynamics.hpp"

namespace py = pybind11;
using namespace qcollapse;

PYBIND11_MODULE(_core, m) {
  m.doc() = "projective-measurement energy accounting for two-qubit schemes";

  m.attr("planck_h") = planck_h;

  // translators run newest-first, so the base class goes in before the
  // subtypes or it would shadow them
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<NotHermitian>(m, "NotHermitian", PyExc_ValueError);
  py::register_exception<NotNormal>(m, "NotNormal", PyExc_ValueError);
  py::register_exception<ProbabilityLeak>(m, "ProbabilityLeak", PyExc_ValueError);
  py::register_exception<DegenerateState>(m, "DegenerateState", PyExc_RuntimeError);
  py::register_exception<NotQND>(m, "NotQND", PyExc_ValueError);

  // matrix algebra
  py::enum_<MatrixKind>(m, "MatrixKind")
      .value("unitary", MatrixKind::unitary)
      .value("hermitian", MatrixKind::hermitian);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &SpectralDecomposition::eigenvectors)
      .def("reconstruct", &SpectralDecomposition::reconstruct);

  m.def("is_unitary", &is_unitary, py::arg("m"), py::arg("tol") = 1e-10);
  m.def("is_hermitian", &is_hermitian, py::arg("m"), py::arg("tol") = 1e-10);
  m.def("spectral_decompose", &spectral_decompose, py::arg("a"), py::arg("kind"),
        py::arg("tol") = 1e-10);
  m.def("unitary_exp", &unitary_exp, py::arg("hamiltonian"), py::arg("t"));
  m.def("principal_log_hamiltonian", &principal_log_hamiltonian, py::arg("u"));
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
  m.def("sigma", &sigma, py::arg("axis"), py::return_value_policy::copy,
        "Pauli matrix by index: 0=I, 1=X, 2=Y, 3=Z");

  // states and schemes
  py::class_<PureState>(m, "PureState")
      .def(py::init<Vector>(), py::arg("amplitudes"))
      .def_static("normalized", &PureState::normalized, py::arg("amplitudes"))
      .def_readonly("amplitudes", &PureState::amplitudes)
      .def_property_readonly("dim", &PureState::dim);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dim", &DensityMatrix::dim);

  py::class_<QubitBasis>(m, "QubitBasis")
      .def_static("canonical", &QubitBasis::canonical)
      .def_static("from_bloch", &QubitBasis::from_bloch, py::arg("theta"), py::arg("phi"))
      .def_static("from_vectors", &QubitBasis::from_vectors, py::arg("a"), py::arg("b"))
      .def_readonly("v0", &QubitBasis::v0)
      .def_readonly("v1", &QubitBasis::v1);

  py::class_<PauliDecomposition>(m, "PauliDecomposition")
      .def(py::init<>())
      .def("__getitem__",
           [](const PauliDecomposition& d, std::pair<int, int> key) {
             return d(key.first, key.second);
           })
      .def("__setitem__",
           [](PauliDecomposition& d, std::pair<int, int> key, double value) {
             d(key.first, key.second) = value;
           })
      .def_readwrite("coeff", &PauliDecomposition::coeff);

  py::class_<MeasurementScheme>(m, "MeasurementScheme")
      .def(py::init<Matrix, QubitBasis, PointerBasis, PureState, std::vector<double>>(),
           py::arg("hamiltonian"), py::arg("system_basis"), py::arg("pointer"),
           py::arg("initial_state"), py::arg("collapse_times"))
      .def_readwrite("hamiltonian", &MeasurementScheme::hamiltonian)
      .def_readwrite("system_basis", &MeasurementScheme::system_basis)
      .def_readwrite("pointer", &MeasurementScheme::pointer)
      .def_readwrite("initial_state", &MeasurementScheme::initial_state)
      .def_readwrite("collapse_times", &MeasurementScheme::collapse_times);

  m.def("expectation",
        py::overload_cast<const PureState&, const Matrix&>(&expectation),
        py::arg("state"), py::arg("a"));
  m.def("expectation",
        py::overload_cast<const DensityMatrix&, const Matrix&>(&expectation),
        py::arg("state"), py::arg("a"));
  m.def("pauli_decompose", &pauli_decompose, py::arg("h"));
  m.def("pauli_compose", &pauli_compose, py::arg("d"));
  m.def("split_terms",
        [](const PauliDecomposition& d) {
          const HamiltonianTerms terms = split_terms(d);
          return py::make_tuple(terms.system, terms.detector, terms.interaction);
        },
        py::arg("d"), "returns (system, detector, interaction) matrices");
  m.def("build_standard_scheme", &build_standard_scheme);
  m.def("standard_hamiltonian", &standard_hamiltonian);
  m.def("standard_premeasurement_unitary", &standard_premeasurement_unitary);

  // dynamics
  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("coefficients", &CorrelationReport::coefficients)
      .def_readonly("is_premeasurement", &CorrelationReport::is_premeasurement)
      .def_readonly("pairing", &CorrelationReport::pairing)
      .def_readonly("score", &CorrelationReport::score);

  py::class_<Propagator>(m, "Propagator")
      .def(py::init<const Matrix&>(), py::arg("hamiltonian"))
      .def("apply", &Propagator::apply, py::arg("state"), py::arg("t"));

  m.def("evolve", &evolve, py::arg("scheme"), py::arg("t"));
  m.def("correlation_report", &correlation_report, py::arg("state"), py::arg("system"),
        py::arg("pointer"), py::arg("tol"));
  m.def("scan_premeasurement", &scan_premeasurement, py::arg("scheme"), py::arg("t_start"),
        py::arg("t_end"), py::arg("step"), py::arg("tol"));

  // collapse and bookkeeping
  py::class_<CollapseOutcome>(m, "CollapseOutcome")
      .def_readonly("branch", &CollapseOutcome::branch)
      .def_readonly("probability", &CollapseOutcome::probability)
      .def_readonly("post_state", &CollapseOutcome::post_state)
      .def_readonly("branch_energy", &CollapseOutcome::branch_energy);

  py::class_<EnergyLedger>(m, "EnergyLedger")
      .def_readonly("e_pre", &EnergyLedger::e_pre)
      .def_readonly("e_post", &EnergyLedger::e_post)
      .def_readonly("cross", &EnergyLedger::cross)
      .def_readonly("delta", &EnergyLedger::delta);

  py::class_<CollapseAnalysis>(m, "CollapseAnalysis")
      .def_readonly("pre_state", &CollapseAnalysis::pre_state)
      .def_readonly("outcomes", &CollapseAnalysis::outcomes)
      .def_readonly("ledger", &CollapseAnalysis::ledger);

  m.def("project", &project, py::arg("state"), py::arg("pointer"),
        py::arg("prob_floor") = 1e-12);
  m.def("ensemble_density", &ensemble_density, py::arg("outcomes"));
  m.def("analyze_collapse", &analyze_collapse, py::arg("scheme"), py::arg("t_collapse"));
  m.def("energy_balance", &energy_balance, py::arg("scheme"), py::arg("t_collapse"));
  m.def("cycle_ledger", &cycle_ledger, py::arg("scheme"), py::arg("t_collapse"),
        py::arg("n_cycles"));
  m.def("qnd_extend", &qnd_extend, py::arg("h_sp"), py::arg("h_env"), py::arg("h_int"));

#ifdef QCOLLAPSE_VERSION
  m.attr("__version__") = QCOLLAPSE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
