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

#pragma once

#include "lindblad/fockspace.hpp"

namespace lindblad {

/// Thrown when an analytic spectral path needs a diagonalizable H and the
/// channel sits at (or numerically indistinguishably close to) an EP.
struct ExceptionalPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// H = Omega - i Gamma and L = -i H = -i Omega - Gamma.
struct EffectiveMatrices {
  CMatrix h;
  CMatrix l;
  int n_modes;
};

EffectiveMatrices effective(const SystemSpec& spec);

/// Matrix of the temperature-dependent semiclassical Hamiltonian,
/// Omega + i Gamma_0 = Omega - i(Gamma_+ + Gamma_-); equals H at n_T = 0.
/// The accompanying scalar offset is -i Tr Gamma_+.
CMatrix semiclassical_matrix(const SystemSpec& spec);
Complex semiclassical_offset(const SystemSpec& spec);

/// Closed-form two-mode propagator P(t) = e^{Lt}
///   = e^{-(i w0 + g0) t} { cosh(qt) s0 - sinh(qt)/q (gvec + i wvec, sigma) },
/// q^2 = sum_k (gamma_k + i omega_k)^2, with a series branch across q -> 0.
struct TwoModePropagator {
  TwoModeChannel channel;
  Complex q;
  bool ep_flag;  // |q| numerically zero: P(t) linear in t

  CMatrix at(double t) const;
};

TwoModePropagator two_mode_propagator(const TwoModeChannel& ch);
CMatrix two_mode_propagator(const TwoModeChannel& ch, double t);

enum class DynamicalRegime { Exponential, ExceptionalPoint, Oscillatory, Mixed };

struct EpClassification {
  DynamicalRegime regime;
  Complex q;
  double q_abs2;          // |q|^2, distance measure from the EP manifold
  double defectiveness;   // of H
};

EpClassification ep_classify(const TwoModeChannel& ch);
const char* regime_name(DynamicalRegime r);

/// One eigenvalue lambda_{mn} = sum_k { m_k L_k^d + n_k conj(L_k^d) } with its
/// multi-index pair.
struct SpectralLine {
  std::vector<int> m, n;
  Complex lambda;
};

struct SpectrumResult {
  std::vector<SpectralLine> lines;          // sorted by Re descending
  CVector mode_rates;                        // L_k^(d), eigenvalues of L
  Eigen::VectorXd omega_d;                   // -Im L_k^(d)
  Eigen::VectorXd gamma_d;                   // -Re L_k^(d)
  CMatrix diagonalizer;                      // E with L E = E D, normalized columns
  CMatrix diagonalizer_inv;                  // e^{V} in the paper's convention
  double defectiveness;
  bool defective;
};

/// Analytic Liouvillian spectrum for all (m, n) with total photons <= max_photons
/// per side. Throws ExceptionalPointError when H is defective.
SpectrumResult liouvillian_spectrum(const SystemSpec& spec, int max_photons);

/// Single-mode eigenoperators in a truncated space of the given cutoff:
///   rho_mn = sum_k (-Z)^k sqrt(m! n!) / (k! (m-k)! (n-k)!) (a^dag)^{m-k} rho_0 a^{n-k},
///   rho_0 = e^{-z_T a^dag a},
///   sigma_nm = sum_k (-n_T)^k sqrt(m! n!) / (k! (m-k)! (n-k)!) (a^dag)^{n-k} a^{m-k},
/// with Tr(sigma_nm rho_mn) = Z^{m+n+1}.
struct SingleModeEigenoperators {
  CMatrix rho_mn;
  CMatrix sigma_nm;
  Complex lambda;
  double q_mn;  // Z^{m+n+1}
};

SingleModeEigenoperators eigenoperators_single_mode(double omega, double gamma, double n_T,
                                                    int m, int n, int cutoff);

/// Steady state rho_ss = e^{-J_{V_ss}} / Tr with e^{V_ss} = W_+^{-1} + I.
/// For thermal specs this is the product Gibbs state.
CMatrix steady_state(const SystemSpec& spec, const FockSpace& fs);

/// Appendix-style Lyapunov / Riccati package.
///   W_nu solves L W + W L^dag + 2 Gamma_nu = 0 (so W_+ = W_- - I);
///   A_nu = (W_{-nu})^{-1} - nu I solve the quadratic Riccati equation and
///     satisfy A_{-nu} = -A_nu^{-1};
///   B_plus = (W_-)^{-1} - I and B_minus solve the T_{-+} elimination;
///   tpm_plus = -W_+ and tpm_minus = I are the T_{+-} pair;
///   e^{V_ss} = W_+^{-1} + I.
struct RiccatiSolution {
  CMatrix w_plus, w_minus;
  CMatrix a_plus, a_minus;
  CMatrix b_plus, b_minus;
  CMatrix tpm_plus, tpm_minus;
  CMatrix v_ss;
  CMatrix gamma0_transformed;  // -nu W_{-nu}^{-1} Gamma W_{-nu} at nu = +1
  CMatrix l_tilde;             // (W_-)^{-1} L W_-, spectrally equivalent to L
};

RiccatiSolution solve_riccati(const SystemSpec& spec);

/// Eigenmode-expansion propagation (diagonalizable H): the multimode version of
/// the single-mode expansion, with coefficients Tr(sigma rho0)/q evaluated
/// numerically. Throws ExceptionalPointError at EPs.
CMatrix eigenmode_evolution(const SystemSpec& spec, const FockSpace& fs,
                            const CMatrix& rho0, double t, int max_photons);

/// Fock-space matrix elements U(t) = e^{J_L t}, photon-number preserving;
/// valid at EPs (used as the propagator route there).
CMatrix effective_hamiltonian_propagator(const SystemSpec& spec, const FockSpace& fs, double t);

}  // namespace lindblad
