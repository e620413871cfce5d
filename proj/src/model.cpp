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

#include "lindblad/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lindblad {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  os << "invalid system spec:";
  for (const auto& p : parts) os << "\n  - " << p;
  return os.str();
}

constexpr double kHermTol = 1e-12;

bool hermitian_within(const CMatrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

double min_eig_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return es.eigenvalues().minCoeff();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> v)
    : std::runtime_error(join(v)), violations(std::move(v)) {}

ThermalRates thermal_rates(double n_T) {
  if (n_T < 0.0 || !std::isfinite(n_T)) {
    throw ValidationError({"n_T must be a finite nonnegative real, got " + std::to_string(n_T)});
  }
  ThermalRates r;
  r.n_T = n_T;
  r.gamma_plus = n_T;
  r.gamma_minus = n_T + 1.0;
  r.gamma_zero = -2.0 * n_T - 1.0;
  r.exp_minus_zT = n_T / (n_T + 1.0);
  r.Z = n_T + 1.0;
  r.z_T = n_T > 0.0 ? std::log((n_T + 1.0) / n_T)
                    : std::numeric_limits<double>::infinity();
  return r;
}

std::vector<std::string> check_spec(const CMatrix& omega, const CMatrix& gamma_plus,
                                    const CMatrix& gamma_minus, bool allow_zero_gamma_plus) {
  std::vector<std::string> bad;
  if (omega.rows() != omega.cols()) bad.push_back("Omega must be square");
  if (gamma_plus.rows() != gamma_plus.cols()) bad.push_back("Gamma_+ must be square");
  if (gamma_minus.rows() != gamma_minus.cols()) bad.push_back("Gamma_- must be square");
  if (omega.rows() != gamma_plus.rows() || omega.rows() != gamma_minus.rows()) {
    bad.push_back("Omega, Gamma_+ and Gamma_- must share one dimension");
  }
  if (!bad.empty()) return bad;
  if (omega.rows() == 0) bad.push_back("mode count must be positive");
  if (!omega.allFinite() || !gamma_plus.allFinite() || !gamma_minus.allFinite()) {
    bad.push_back("all matrix entries must be finite");
  }
  if (!bad.empty()) return bad;
  if (!hermitian_within(omega, kHermTol)) bad.push_back("Omega is not Hermitian (tol 1e-12)");
  if (!hermitian_within(gamma_plus, kHermTol)) bad.push_back("Gamma_+ is not Hermitian");
  if (!hermitian_within(gamma_minus, kHermTol)) bad.push_back("Gamma_- is not Hermitian");
  if (!bad.empty()) return bad;
  const double lo_p = min_eig_hermitian((gamma_plus + gamma_plus.adjoint()) / 2.0);
  const double lo_m = min_eig_hermitian((gamma_minus + gamma_minus.adjoint()) / 2.0);
  const double lo_g = min_eig_hermitian(
      ((gamma_minus - gamma_plus) + (gamma_minus - gamma_plus).adjoint()) / 2.0);
  if (allow_zero_gamma_plus) {
    if (lo_p < 0.0) bad.push_back("Gamma_+ must be positive semidefinite (thermal path)");
  } else if (lo_p <= 0.0) {
    bad.push_back("Gamma_+ must be positive definite");
  }
  if (lo_m <= 0.0) bad.push_back("Gamma_- must be positive definite");
  if (lo_g <= 0.0) {
    bad.push_back("Gamma = Gamma_- - Gamma_+ must be positive definite (smallest eigenvalue " +
                  std::to_string(lo_g) + ")");
  }
  return bad;
}

SystemSpec::SystemSpec(CMatrix omega, CMatrix gp, CMatrix gm, std::optional<double> n_T)
    : omega_(std::move(omega)), gamma_plus_(std::move(gp)), gamma_minus_(std::move(gm)),
      thermal_n_T_(n_T) {}

SystemSpec SystemSpec::general(const CMatrix& omega, const CMatrix& gamma_plus,
                               const CMatrix& gamma_minus) {
  auto bad = check_spec(omega, gamma_plus, gamma_minus, /*allow_zero_gamma_plus=*/false);
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return SystemSpec(omega, gamma_plus, gamma_minus, std::nullopt);
}

SystemSpec SystemSpec::thermal(const CMatrix& omega, const CMatrix& gamma, double n_T) {
  const ThermalRates r = thermal_rates(n_T);
  CMatrix gp = r.gamma_plus * gamma;
  CMatrix gm = r.gamma_minus * gamma;
  auto bad = check_spec(omega, gp, gm, /*allow_zero_gamma_plus=*/true);
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return SystemSpec(omega, std::move(gp), std::move(gm), n_T);
}

double SystemSpec::n_T() const {
  if (!thermal_n_T_) throw NumericalError("SystemSpec: not a thermal spec");
  return *thermal_n_T_;
}

const CMatrix& pauli(int k) {
  static const CMatrix s0 = (CMatrix(2, 2) << 1, 0, 0, 1).finished();
  static const CMatrix s1 = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
  static const CMatrix s2 = (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const CMatrix s3 = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw DimensionError("pauli: index out of range");
  }
}

CMatrix pauli_combination(double c0, const Eigen::Vector3d& v) {
  return c0 * pauli(0) + v(0) * pauli(1) + v(1) * pauli(2) + v(2) * pauli(3);
}

void pauli_decompose(const CMatrix& m, double& c0, Eigen::Vector3d& v) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("pauli_decompose: need 2x2");
  c0 = 0.5 * (m(0, 0) + m(1, 1)).real();
  v(0) = 0.5 * (m(0, 1) + m(1, 0)).real();
  v(1) = 0.5 * (m(1, 0) - m(0, 1)).imag();
  v(2) = 0.5 * (m(0, 0) - m(1, 1)).real();
}

TwoModeChannel::TwoModeChannel(double w0, Eigen::Vector3d wv, double g0, Eigen::Vector3d gv)
    : omega0_(w0), gamma0_(g0), omega_vec_(std::move(wv)), gamma_vec_(std::move(gv)) {}

TwoModeChannel TwoModeChannel::cartesian(double omega0, const Eigen::Vector3d& omega_vec,
                                         double gamma0, const Eigen::Vector3d& gamma_vec) {
  if (!(gamma0 > gamma_vec.norm())) {
    throw ValidationError({"two-mode channel: gamma0 must exceed |gamma_vec| for Gamma > 0 (gamma0 = " +
                           std::to_string(gamma0) + ", |gamma_vec| = " +
                           std::to_string(gamma_vec.norm()) + ")"});
  }
  return TwoModeChannel(omega0, omega_vec, gamma0, gamma_vec);
}

TwoModeChannel TwoModeChannel::angular(double omega0, double omega, double theta_omega,
                                       double phi_omega, double gamma0, double gamma,
                                       double theta_gamma, double phi_gamma) {
  const auto unit = [](double th, double ph) {
    return Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  };
  return cartesian(omega0, omega * unit(theta_omega, phi_omega),
                   gamma0, gamma * unit(theta_gamma, phi_gamma));
}

double TwoModeChannel::theta_omega() const {
  const double w = omega_len();
  return w > 0 ? std::acos(omega_vec_(2) / w) : 0.0;
}
double TwoModeChannel::phi_omega() const {
  return std::atan2(omega_vec_(1), omega_vec_(0));
}
double TwoModeChannel::theta_gamma() const {
  const double g = gamma_len();
  return g > 0 ? std::acos(gamma_vec_(2) / g) : 0.0;
}
double TwoModeChannel::phi_gamma() const {
  return std::atan2(gamma_vec_(1), gamma_vec_(0));
}

SystemSpec assemble_two_mode(const TwoModeChannel& ch, double n_T) {
  return SystemSpec::thermal(ch.omega_matrix(), ch.gamma_matrix(), n_T);
}

}  // namespace lindblad
