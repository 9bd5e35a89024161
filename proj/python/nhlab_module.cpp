#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nhlab/analytic.hpp"
#include "nhlab/dynamics.hpp"
#include "nhlab/eigen.hpp"
#include "nhlab/lattice.hpp"
#include "nhlab/recursion.hpp"

namespace py = pybind11;
using namespace nhlab;

PYBIND11_MODULE(nhlab, m) {
    m.doc() = "numerical laboratory for non-Hermitian tight-binding lattices";

    py::enum_<ModelKind>(m, "ModelKind")
        .value("HatanoNelson", ModelKind::HatanoNelson)
        .value("GainLoss", ModelKind::GainLoss)
        .value("NonReciprocalSSH", ModelKind::NonReciprocalSSH);
    py::enum_<Boundary>(m, "Boundary")
        .value("OBC", Boundary::OBC)
        .value("PBC", Boundary::PBC);
    py::enum_<SpectrumMethod>(m, "SpectrumMethod")
        .value("Analytic", SpectrumMethod::Analytic)
        .value("QR", SpectrumMethod::QR)
        .value("GaugedQR", SpectrumMethod::GaugedQR)
        .value("Bloch", SpectrumMethod::Bloch);
    py::enum_<Membership>(m, "Membership")
        .value("Interior", Membership::Interior)
        .value("Boundary", Membership::Boundary)
        .value("Exterior", Membership::Exterior);
    py::enum_<BandMorphology>(m, "BandMorphology")
        .value("SingleLobe", BandMorphology::SingleLobe)
        .value("Pinched", BandMorphology::Pinched)
        .value("TwoLobes", BandMorphology::TwoLobes);
    py::enum_<Growth>(m, "Growth")
        .value("Bounded", Growth::Bounded)
        .value("Divergent", Growth::Divergent)
        .value("Indeterminate", Growth::Indeterminate);
    py::enum_<RobustnessVerdict>(m, "RobustnessVerdict")
        .value("Robust", RobustnessVerdict::Robust)
        .value("Fragile", RobustnessVerdict::Fragile);

    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init([](ModelKind kind, int n, double gamma, double v0, double delta,
                         Boundary bc) {
                 return ModelSpec{kind, n, gamma, v0, delta, bc};
             }),
             py::arg("kind"), py::arg("n"), py::arg("gamma"), py::arg("v0") = 0.0,
             py::arg("delta") = 0.0, py::arg("bc") = Boundary::OBC)
        .def_readwrite("kind", &ModelSpec::kind)
        .def_readwrite("n", &ModelSpec::n)
        .def_readwrite("gamma", &ModelSpec::gamma)
        .def_readwrite("v0", &ModelSpec::v0)
        .def_readwrite("delta", &ModelSpec::delta)
        .def_readwrite("bc", &ModelSpec::bc)
        .def("validate", &ModelSpec::validate);

    py::class_<DisorderSpec>(m, "DisorderSpec")
        .def(py::init([](double fw, double gw, std::uint64_t seed, int realizations) {
                 return DisorderSpec{fw, gw, seed, realizations};
             }),
             py::arg("forward_width"), py::arg("gamma_width") = 0.0, py::arg("seed") = 0,
             py::arg("realizations") = 1)
        .def_readwrite("forward_width", &DisorderSpec::forward_width)
        .def_readwrite("gamma_width", &DisorderSpec::gamma_width)
        .def_readwrite("seed", &DisorderSpec::seed)
        .def_readwrite("realizations", &DisorderSpec::realizations);

    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def_readonly("n", &Hamiltonian::n)
        .def_readonly("diag", &Hamiltonian::diag)
        .def_readonly("lower", &Hamiltonian::lower)
        .def_readonly("upper", &Hamiltonian::upper)
        .def_readonly("corner_lower", &Hamiltonian::corner_lower)
        .def_readonly("corner_upper", &Hamiltonian::corner_upper)
        .def("apply",
             [](const Hamiltonian& h, const std::vector<complexd>& psi) {
                 return h.apply(psi);
             })
        .def("dense", &Hamiltonian::dense);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("method", &Spectrum::method)
        .def_readonly("max_residual", &Spectrum::max_residual)
        .def_readonly("conditioning_note", &Spectrum::conditioning_note);

    py::class_<ZeroModeProfile>(m, "ZeroModeProfile")
        .def_readonly("ratio", &ZeroModeProfile::ratio)
        .def_readonly("amplitudes", &ZeroModeProfile::amplitudes)
        .def_readonly("normalization", &ZeroModeProfile::normalization);

    py::class_<RecursionTrace>(m, "RecursionTrace")
        .def_readonly("energy", &RecursionTrace::energy)
        .def_readonly("seed", &RecursionTrace::seed)
        .def_readonly("psi", &RecursionTrace::psi)
        .def_readonly("log_abs", &RecursionTrace::log_abs)
        .def_readonly("residual", &RecursionTrace::residual)
        .def_readonly("overflow_at", &RecursionTrace::overflow_at);

    py::class_<GrowthClass>(m, "GrowthClass")
        .def_readonly("verdict", &GrowthClass::verdict)
        .def_readonly("decay_rate", &GrowthClass::decay_rate);

    py::class_<QuasiStationaryState>(m, "QuasiStationaryState")
        .def_readonly("psi", &QuasiStationaryState::psi)
        .def_readonly("boundary_residual", &QuasiStationaryState::boundary_residual);

    py::class_<EvolutionResult>(m, "EvolutionResult")
        .def_readonly("times", &EvolutionResult::times)
        .def_readonly("deviation", &EvolutionResult::deviation)
        .def_readonly("lognorm", &EvolutionResult::lognorm)
        .def_readonly("lifetime", &EvolutionResult::lifetime)
        .def_readonly("final_state", &EvolutionResult::final_state);

    py::class_<RobustnessReport>(m, "RobustnessReport")
        .def_readonly("realizations", &RobustnessReport::realizations)
        .def_readonly("zero_energy_spread", &RobustnessReport::zero_energy_spread)
        .def_readonly("nearest_eigs", &RobustnessReport::nearest_eigs)
        .def_readonly("survival_overlap", &RobustnessReport::survival_overlap)
        .def_readonly("verdict", &RobustnessReport::verdict);

    m.def("build_hamiltonian", &build_hamiltonian, py::arg("spec"));
    m.def("apply_disorder", &apply_disorder, py::arg("spec"), py::arg("disorder"),
          py::arg("realization"));
    m.def("hatano_obc_eigs", &hatano_obc_eigs, py::arg("n"), py::arg("gamma"));
    m.def("ellipse_membership", &ellipse_membership, py::arg("e"), py::arg("gamma"),
          py::arg("eps_b") = 1e-9);
    m.def("gainloss_band_membership", &gainloss_band_membership, py::arg("e"),
          py::arg("v0"), py::arg("eps_b") = 1e-9);
    m.def("gainloss_band_morphology", &gainloss_band_morphology, py::arg("v0"),
          py::arg("tol") = 1e-9);
    m.def("ssh_zero_mode", &ssh_zero_mode, py::arg("n"), py::arg("gamma"),
          py::arg("delta"));
    m.def("ssh_zero_mode_domain", &ssh_zero_mode_domain, py::arg("gamma"));
    m.def("eigenvalues_qr", &eigenvalues_qr, py::arg("h"));
    m.def("obc_spectrum", &obc_spectrum, py::arg("spec"));
    m.def("pbc_spectrum", &pbc_spectrum, py::arg("spec"), py::arg("num_k"));
    m.def("multiset_distance", &multiset_distance, py::arg("a"), py::arg("b"));
    m.def("recurse", &recurse, py::arg("spec"), py::arg("energy"), py::arg("seed"),
          py::arg("j_max"));
    m.def("classify_growth", &classify_growth, py::arg("spec"), py::arg("energy"),
          py::arg("j_max") = 4000, py::arg("rate_tol") = 1e-3);
    m.def("quasi_stationary_state", &quasi_stationary_state, py::arg("spec"),
          py::arg("energy"));
    m.def(
        "evolve",
        [](const Hamiltonian& h, const std::vector<complexd>& psi0, double t_final,
           double tol, int num_samples, double eps_life) {
            return evolve(h, psi0, t_final, tol, num_samples, eps_life);
        },
        py::arg("h"), py::arg("psi0"), py::arg("t_final"), py::arg("tol") = 1e-9,
        py::arg("num_samples") = 201, py::arg("eps_life") = 0.01);
    m.def(
        "stationarity_deviation",
        [](const std::vector<complexd>& psi_t, const std::vector<complexd>& psi0) {
            return stationarity_deviation(psi_t, psi0);
        },
        py::arg("psi_t"), py::arg("psi0"));
    m.def("disorder_robustness",
          [](const ModelSpec& spec, const DisorderSpec& d) {
              return disorder_robustness(spec, d);
          },
          py::arg("spec"), py::arg("disorder"));
}
