// Copyright 2026 The lindbladpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad/io.hpp"
#include "lindblad/lowtemp.hpp"
#include "lindblad/qubitspeed.hpp"
#include "lindblad/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lindblad;

PYBIND11_MODULE(_core, m) {
  m.doc() = "multimode bosonic Lindblad dynamics: Liouvillian construction, "
            "jump-eliminating transformations, spectra, exceptional points and "
            "polarization-qubit speed of evolution";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<ExceptionalPointError>(m, "ExceptionalPointError");

  // ---- matkernel
  m.def("expm", &lindblad::expm, py::arg("a"), "matrix exponential (Pade + scaling/squaring)");
  m.def("solve_lyapunov", &solve_lyapunov, py::arg("l"), py::arg("c"),
        "solve L W + W L^dag + 2C = 0");
  m.def("hs_inner", &hs_inner, py::arg("a"), py::arg("b"));
  m.def("hs_norm", &hs_norm, py::arg("a"));
  py::class_<EigResult>(m, "EigResult")
      .def_readonly("eigenvalues", &EigResult::eigenvalues)
      .def_readonly("right_vectors", &EigResult::right_vectors)
      .def_readonly("defectiveness", &EigResult::defectiveness)
      .def("defective", &EigResult::defective);
  m.def("eig", &eig, py::arg("a"));

  // ---- model
  py::class_<ThermalRates>(m, "ThermalRates")
      .def_readonly("n_T", &ThermalRates::n_T)
      .def_readonly("gamma_plus", &ThermalRates::gamma_plus)
      .def_readonly("gamma_minus", &ThermalRates::gamma_minus)
      .def_readonly("gamma_zero", &ThermalRates::gamma_zero)
      .def_readonly("exp_minus_zT", &ThermalRates::exp_minus_zT)
      .def_readonly("Z", &ThermalRates::Z)
      .def_readonly("z_T", &ThermalRates::z_T);
  m.def("thermal_rates", &thermal_rates, py::arg("n_T"));

  py::class_<SystemSpec>(m, "SystemSpec")
      .def_static("general", &SystemSpec::general, py::arg("omega"), py::arg("gamma_plus"),
                  py::arg("gamma_minus"))
      .def_static("thermal", &SystemSpec::thermal, py::arg("omega"), py::arg("gamma"),
                  py::arg("n_T"))
      .def_property_readonly("n_modes", &SystemSpec::n_modes)
      .def_property_readonly("omega", &SystemSpec::omega)
      .def_property_readonly("gamma_plus", &SystemSpec::gamma_plus)
      .def_property_readonly("gamma_minus", &SystemSpec::gamma_minus)
      .def_property_readonly("gamma", &SystemSpec::gamma)
      .def_property_readonly("is_thermal", &SystemSpec::is_thermal);

  py::class_<TwoModeChannel>(m, "TwoModeChannel")
      .def_static("cartesian", &TwoModeChannel::cartesian, py::arg("omega0"),
                  py::arg("omega_vec"), py::arg("gamma0"), py::arg("gamma_vec"))
      .def_static("angular", &TwoModeChannel::angular, py::arg("omega0"), py::arg("omega"),
                  py::arg("theta_omega"), py::arg("phi_omega"), py::arg("gamma0"),
                  py::arg("gamma"), py::arg("theta_gamma"), py::arg("phi_gamma"))
      .def_property_readonly("omega0", &TwoModeChannel::omega0)
      .def_property_readonly("gamma0", &TwoModeChannel::gamma0)
      .def_property_readonly("omega_vec", &TwoModeChannel::omega_vec)
      .def_property_readonly("gamma_vec", &TwoModeChannel::gamma_vec)
      .def_property_readonly("omega_matrix", &TwoModeChannel::omega_matrix)
      .def_property_readonly("gamma_matrix", &TwoModeChannel::gamma_matrix);
  m.def("assemble_two_mode", &assemble_two_mode, py::arg("channel"), py::arg("n_T") = 0.0);

  // ---- fockspace
  py::class_<FockSpace>(m, "FockSpace")
      .def(py::init<int, int>(), py::arg("n_modes"), py::arg("cutoff"))
      .def_property_readonly("n_modes", &FockSpace::n_modes)
      .def_property_readonly("cutoff", &FockSpace::cutoff)
      .def_property_readonly("dim", &FockSpace::dim)
      .def("flat_index", &FockSpace::flat_index)
      .def("multi_index", &FockSpace::multi_index)
      .def("total_photons", &FockSpace::total_photons);
  m.def("ladder", &ladder, py::arg("fs"), py::arg("mode"),
        "(a, a_dagger) for one mode as dense Hilbert-space matrices");
  m.def("jordan_operator", &jordan_operator, py::arg("fs"), py::arg("a"));
  m.def(
      "build_liouvillian",
      [](const FockSpace& fs, const SystemSpec& spec) { return build_liouvillian(fs, spec).mat; },
      py::arg("fs"), py::arg("spec"),
      "dense Liouvillian on row-stacked vectorized operators");
  m.def(
      "build_adjoint",
      [](const FockSpace& fs, const SystemSpec& spec) { return build_adjoint(fs, spec).mat; },
      py::arg("fs"), py::arg("spec"));
  m.def(
      "superop_assoc",
      [](const FockSpace& fs, const std::string& kind, const CMatrix& a) {
        AssocKind k;
        if (kind == "K0") k = AssocKind::K0;
        else if (kind == "K+") k = AssocKind::KPlus;
        else if (kind == "K-") k = AssocKind::KMinus;
        else if (kind == "N-") k = AssocKind::NMinus;
        else throw ValidationError({"superop_assoc: unknown kind " + kind});
        return superop_assoc(fs, k, a).mat;
      },
      py::arg("fs"), py::arg("kind"), py::arg("a"),
      "kind in {'K0','K+','K-','N-'}");
  m.def(
      "oracle_propagate",
      [](const FockSpace& fs, const SystemSpec& spec, const CMatrix& rho0, double t) {
        const auto res = oracle_propagate(fs, liouvillian_gksl_sparse(fs, spec), rho0, t);
        return py::make_tuple(res.rho_t, res.boundary_mass);
      },
      py::arg("fs"), py::arg("spec"), py::arg("rho0"), py::arg("t"),
      "(rho_t, boundary_mass) under e^{Lt}");
  m.def(
      "validate_jump_elimination",
      [](const FockSpace& fs, double n_T, const CMatrix& omega, const CMatrix& gamma,
         int max_photons) {
        const auto rep = validate_jump_elimination(fs, thermal_rates(n_T), omega, gamma,
                                                   max_photons);
        return py::make_tuple(rep.residual_plus_minus, rep.residual_minus_plus, rep.scale);
      },
      py::arg("fs"), py::arg("n_T"), py::arg("omega"), py::arg("gamma"),
      py::arg("max_photons") = 2);

  // ---- spectral
  py::class_<SpectralLine>(m, "SpectralLine")
      .def_readonly("m", &SpectralLine::m)
      .def_readonly("n", &SpectralLine::n)
      .def_readonly("lam", &SpectralLine::lambda);
  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("lines", &SpectrumResult::lines)
      .def_readonly("mode_rates", &SpectrumResult::mode_rates)
      .def_readonly("defectiveness", &SpectrumResult::defectiveness);
  m.def("liouvillian_spectrum", &liouvillian_spectrum, py::arg("spec"), py::arg("max_photons"));
  m.def(
      "two_mode_propagator",
      [](const TwoModeChannel& ch, double t) { return two_mode_propagator(ch, t); },
      py::arg("channel"), py::arg("t"), "closed-form P(t) = e^{Lt}");
  m.def(
      "ep_classify",
      [](const TwoModeChannel& ch) {
        const auto cls = ep_classify(ch);
        return py::make_tuple(regime_name(cls.regime), cls.q, cls.q_abs2, cls.defectiveness);
      },
      py::arg("channel"), "(regime, q, |q|^2, defectiveness)");
  m.def("steady_state", &steady_state, py::arg("spec"), py::arg("fs"));
  m.def(
      "eigenoperators_single_mode",
      [](double omega, double gamma, double n_T, int mm, int nn, int cutoff) {
        const auto e = eigenoperators_single_mode(omega, gamma, n_T, mm, nn, cutoff);
        return py::make_tuple(e.rho_mn, e.sigma_nm, e.lambda, e.q_mn);
      },
      py::arg("omega"), py::arg("gamma"), py::arg("n_T"), py::arg("m"), py::arg("n"),
      py::arg("cutoff"), "(rho_mn, sigma_nm, lambda, q_mn)");
  m.def("eigenmode_evolution", &eigenmode_evolution, py::arg("spec"), py::arg("fs"),
        py::arg("rho0"), py::arg("t"), py::arg("max_photons"));
  py::class_<RiccatiSolution>(m, "RiccatiSolution")
      .def_readonly("w_plus", &RiccatiSolution::w_plus)
      .def_readonly("w_minus", &RiccatiSolution::w_minus)
      .def_readonly("a_plus", &RiccatiSolution::a_plus)
      .def_readonly("a_minus", &RiccatiSolution::a_minus)
      .def_readonly("b_plus", &RiccatiSolution::b_plus)
      .def_readonly("b_minus", &RiccatiSolution::b_minus)
      .def_readonly("tpm_plus", &RiccatiSolution::tpm_plus)
      .def_readonly("tpm_minus", &RiccatiSolution::tpm_minus)
      .def_readonly("v_ss", &RiccatiSolution::v_ss);
  m.def("solve_riccati", &solve_riccati, py::arg("spec"));

  // ---- lowtemp
  m.def("q_matrix", &q_matrix, py::arg("spec"), py::arg("t"));
  m.def(
      "approx_propagate",
      [](const FockSpace& fs, const SystemSpec& spec, const CMatrix& rho0, double t) {
        const auto res = approx_propagate(fs, spec, rho0, t);
        return py::make_tuple(res.rho0_t, res.rho1_t);
      },
      py::arg("fs"), py::arg("spec"), py::arg("rho0"), py::arg("t"),
      "(rho0_t, rho1_t) with rho(t) ~ rho0_t + n_T rho1_t");

  // ---- qubitspeed
  py::class_<QubitState>(m, "QubitState")
      .def_readonly("theta", &QubitState::theta)
      .def_readonly("phi", &QubitState::phi)
      .def_readonly("n_vec", &QubitState::n_vec)
      .def_readonly("r0", &QubitState::r0);
  m.def("initial_qubit", &initial_qubit, py::arg("theta"), py::arg("phi"));
  m.def("v0_speed", &v0_speed, py::arg("channel"), py::arg("qubit"), py::arg("t"));
  m.def("total_speed", &total_speed, py::arg("channel"), py::arg("qubit"), py::arg("n_T"),
        py::arg("t"));
  py::class_<SpeedTrace>(m, "SpeedTrace")
      .def_readonly("times", &SpeedTrace::times)
      .def_readonly("v0", &SpeedTrace::v0)
      .def_readonly("v", &SpeedTrace::v)
      .def_readonly("fidelity", &SpeedTrace::fidelity)
      .def_readonly("t_f", &SpeedTrace::t_f)
      .def_readonly("n_T", &SpeedTrace::n_T);
  m.def("fidelity_qsl", &fidelity_qsl, py::arg("channel"), py::arg("qubit"), py::arg("n_T"),
        py::arg("t_grid"));
  m.def("sweep", &sweep, py::arg("channels"), py::arg("qubit"), py::arg("n_T_list"),
        py::arg("t_grid"));

  m.attr("__version__") = "0.1.0";
}
