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

#include "lindblad/matkernel.hpp"

#include <lapacke.h>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

namespace {
// std::complex<double> is layout-compatible with double[2] and the C complex.
inline lapack_complex_double* lp(std::complex<double>* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}
}  // namespace

namespace lindblad {

bool is_finite(const CMatrix& a) {
  return a.allFinite();
}

void require_finite(const CMatrix& a, const std::string& what) {
  if (!a.allFinite()) {
    throw NumericalError(what + ": non-finite entries");
  }
}

void require_square(const CMatrix& a, const std::string& what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(what + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const std::string& what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(what + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

namespace {

// Padé approximant of e^A of odd degree m: numerator/denominator split into
// even and odd parts so only (m-1)/2 products are needed.
CMatrix pade_expm(const CMatrix& a, int degree) {
  const Eigen::Index n = a.rows();
  const CMatrix ident = CMatrix::Identity(n, n);
  // coefficients b_k of the [m/m] Padé approximant to exp
  static const double b3[] = {120, 60, 12, 1};
  static const double b5[] = {30240, 15120, 3360, 420, 30, 1};
  static const double b7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
  static const double b9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                              2162160., 110880., 3960., 90., 1.};
  static const double b13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800., 129060195264000., 10559470521600.,
                               670442572800., 33522128640., 1323241920., 40840800.,
                               960960., 16380., 182., 1.};
  const double* b = nullptr;
  switch (degree) {
    case 3: b = b3; break;
    case 5: b = b5; break;
    case 7: b = b7; break;
    case 9: b = b9; break;
    case 13: b = b13; break;
    default: throw NumericalError("pade_expm: unsupported degree");
  }
  const CMatrix a2 = a * a;
  CMatrix u, v;
  if (degree <= 9) {
    // U = A (b1 I + b3 A2 + ...), V = b0 I + b2 A2 + ...
    CMatrix even = b[0] * ident;
    CMatrix odd = b[1] * ident;
    CMatrix pow = ident;
    for (int k = 2; k <= degree; k += 2) {
      pow = pow * a2;
      even += b[k] * pow;
      if (k + 1 <= degree) odd += b[k + 1] * pow;
    }
    u = a * odd;
    v = even;
  } else {
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
             b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
        b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  }
  // (V - U) X = (V + U)
  Eigen::PartialPivLU<CMatrix> lu(v - u);
  return lu.solve(v + u);
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  require_square(a, "expm");
  require_finite(a, "expm");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  // 1-norm thresholds for each Padé degree (double precision)
  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;
  if (norm1 <= theta3) return pade_expm(a, 3);
  if (norm1 <= theta5) return pade_expm(a, 5);
  if (norm1 <= theta7) return pade_expm(a, 7);
  if (norm1 <= theta9) return pade_expm(a, 9);
  int squarings = 0;
  double scaled = norm1;
  while (scaled > theta13) {
    scaled *= 0.5;
    ++squarings;
  }
  CMatrix result = pade_expm(a / std::pow(2.0, squarings), 13);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

EigResult eig(const CMatrix& a) {
  require_square(a, "eig");
  require_finite(a, "eig");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigResult out;
  out.eigenvalues.resize(n);
  out.right_vectors.resize(n, n);
  if (n == 0) {
    out.defectiveness = 1.0;
    return out;
  }
  CMatrix work = a;  // zgeev overwrites
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', n, lp(work.data()), n, lp(out.eigenvalues.data()),
      nullptr, 1, lp(out.right_vectors.data()), n);
  if (info != 0) {
    throw NumericalError("eig: zgeev failed to converge (info=" + std::to_string(info) + ")");
  }
  for (lapack_int j = 0; j < n; ++j) {
    const double nrm = out.right_vectors.col(j).norm();
    if (nrm > 0) out.right_vectors.col(j) /= nrm;
  }
  Eigen::JacobiSVD<CMatrix> svd(out.right_vectors);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  out.defectiveness = smax > 0 ? smin / smax : 0.0;
  return out;
}

CVector eigvals(const CMatrix& a) {
  require_square(a, "eigvals");
  require_finite(a, "eigvals");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  CVector vals(n);
  if (n == 0) return vals;
  CMatrix work = a;
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n, lp(work.data()), n, lp(vals.data()),
      nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw NumericalError("eigvals: zgeev failed to converge (info=" + std::to_string(info) + ")");
  }
  return vals;
}

CMatrix solve_lyapunov(const CMatrix& l, const CMatrix& c) {
  require_square(l, "solve_lyapunov");
  require_same_shape(l, c, "solve_lyapunov");
  require_finite(l, "solve_lyapunov");
  require_finite(c, "solve_lyapunov");
  const CVector lam = eigvals(l);
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k).real() >= 0.0) {
      throw StabilityError("solve_lyapunov: spectrum of L not in the open left half-plane (Re lambda = " +
                           std::to_string(lam(k).real()) + ")");
    }
  }
  const Eigen::Index n = l.rows();
  // Row-stacked vec: vec(L W) = (L ox I) vec(W), vec(W L^dag) = (I ox conj(L)) vec(W).
  const CMatrix ident = CMatrix::Identity(n, n);
  CMatrix sys = Eigen::kroneckerProduct(l, ident).eval() +
                Eigen::kroneckerProduct(ident, l.conjugate()).eval();
  CVector rhs(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) rhs(i * n + j) = -2.0 * c(i, j);
  const CVector w = sys.partialPivLu().solve(rhs);
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = w(i * n + j);
  return out;
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  return (a.adjoint() * b).trace();
}

double hs_norm(const CMatrix& a) {
  return a.norm();  // Frobenius = Hilbert-Schmidt
}

CMatrix logm_hpd(const CMatrix& a) {
  require_square(a, "logm_hpd");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("logm_hpd: eigensolver failed");
  const double lo = es.eigenvalues().minCoeff();
  if (lo <= 0.0) throw NumericalError("logm_hpd: matrix not positive definite");
  Eigen::VectorXd lg = es.eigenvalues().array().log();
  return es.eigenvectors() * lg.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace lindblad
