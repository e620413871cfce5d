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

#include "lindblad/matkernel.hpp"

#include <optional>
#include <vector>

namespace lindblad {

/// Carries the full list of violated invariants for a rejected system spec.
struct ValidationError : std::runtime_error {
  std::vector<std::string> violations;
  explicit ValidationError(std::vector<std::string> v);
};

/// Derived thermal-bath coefficients for a mean photon number n_T.
struct ThermalRates {
  double n_T;
  double gamma_plus;    // n_T
  double gamma_minus;   // n_T + 1
  double gamma_zero;    // -2 n_T - 1
  double exp_minus_zT;  // n_T / (n_T + 1); 0 at n_T = 0
  double Z;             // n_T + 1 = 1 / (1 - e^{-z_T})
  double z_T;           // log((n_T+1)/n_T); +inf at n_T = 0
};

ThermalRates thermal_rates(double n_T);

/// An N-mode open system (Omega, Gamma_+, Gamma_-), possibly carrying the
/// thermal parameterization Gamma_± = gamma_± Gamma it was built from.
class SystemSpec {
 public:
  /// General form. Validates Hermiticity of Omega, Gamma_± > 0 and Gamma_- - Gamma_+ > 0.
  static SystemSpec general(const CMatrix& omega, const CMatrix& gamma_plus,
                            const CMatrix& gamma_minus);

  /// Thermal form Gamma_± = gamma_± Gamma. n_T = 0 is admitted (Gamma_+ = 0).
  static SystemSpec thermal(const CMatrix& omega, const CMatrix& gamma, double n_T);

  int n_modes() const { return static_cast<int>(omega_.rows()); }
  const CMatrix& omega() const { return omega_; }
  const CMatrix& gamma_plus() const { return gamma_plus_; }
  const CMatrix& gamma_minus() const { return gamma_minus_; }
  CMatrix gamma() const { return gamma_minus_ - gamma_plus_; }
  CMatrix gamma_zero() const { return -(gamma_plus_ + gamma_minus_); }

  bool is_thermal() const { return thermal_n_T_.has_value(); }
  double n_T() const;  // throws unless is_thermal()

 private:
  SystemSpec(CMatrix omega, CMatrix gp, CMatrix gm, std::optional<double> n_T);
  CMatrix omega_, gamma_plus_, gamma_minus_;
  std::optional<double> thermal_n_T_;
};

/// Invariant checks behind SystemSpec::general / ::thermal; empty result means valid.
std::vector<std::string> check_spec(const CMatrix& omega, const CMatrix& gamma_plus,
                                    const CMatrix& gamma_minus, bool allow_zero_gamma_plus);

/// Pauli matrix sigma_k, k in 0..3 (sigma_0 = identity).
const CMatrix& pauli(int k);

/// c0*sigma_0 + v1*sigma_1 + v2*sigma_2 + v3*sigma_3.
CMatrix pauli_combination(double c0, const Eigen::Vector3d& v);

/// Decomposes a Hermitian 2x2 matrix into (c0, v) with M = c0 sigma_0 + (v, sigma).
void pauli_decompose(const CMatrix& m, double& c0, Eigen::Vector3d& v);

/// Pauli-basis parameterization of the bimodal channel.
class TwoModeChannel {
 public:
  static TwoModeChannel cartesian(double omega0, const Eigen::Vector3d& omega_vec,
                                  double gamma0, const Eigen::Vector3d& gamma_vec);
  static TwoModeChannel angular(double omega0, double omega, double theta_omega, double phi_omega,
                                double gamma0, double gamma, double theta_gamma, double phi_gamma);

  double omega0() const { return omega0_; }
  double gamma0() const { return gamma0_; }
  const Eigen::Vector3d& omega_vec() const { return omega_vec_; }
  const Eigen::Vector3d& gamma_vec() const { return gamma_vec_; }

  double omega_len() const { return omega_vec_.norm(); }
  double gamma_len() const { return gamma_vec_.norm(); }
  double theta_omega() const;
  double phi_omega() const;
  double theta_gamma() const;
  double phi_gamma() const;

  CMatrix omega_matrix() const { return pauli_combination(omega0_, omega_vec_); }
  CMatrix gamma_matrix() const { return pauli_combination(gamma0_, gamma_vec_); }

 private:
  TwoModeChannel(double w0, Eigen::Vector3d wv, double g0, Eigen::Vector3d gv);
  double omega0_, gamma0_;
  Eigen::Vector3d omega_vec_, gamma_vec_;
};

/// Thermal SystemSpec with Omega = omega0 s0 + (w,s), Gamma = gamma0 s0 + (g,s).
SystemSpec assemble_two_mode(const TwoModeChannel& ch, double n_T = 0.0);

}  // namespace lindblad
