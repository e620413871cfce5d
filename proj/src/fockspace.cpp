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

#include "lindblad/fockspace.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace lindblad {

namespace {

SpMat sparse_identity(int n) {
  SpMat ident(n, n);
  ident.setIdentity();
  return ident;
}

}  // namespace

FockSpace::FockSpace(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1) throw DimensionError("FockSpace: n_modes must be positive");
  if (cutoff < 2) throw DimensionError("FockSpace: cutoff must be at least 2");
  double d = std::pow(static_cast<double>(cutoff), n_modes);
  if (d > 2.5e5) throw DimensionError("FockSpace: requested dimension too large");
  dim_ = 1;
  for (int k = 0; k < n_modes; ++k) dim_ *= cutoff;

  SpMat a1(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a1.insert(k - 1, k) = std::sqrt(static_cast<double>(k));
  a1.makeCompressed();
  const SpMat id1 = sparse_identity(cutoff);
  for (int mode = 0; mode < n_modes; ++mode) {
    SpMat op = (mode == 0) ? a1 : id1;
    for (int k = 1; k < n_modes; ++k) {
      const SpMat& factor = (k == mode) ? a1 : id1;
      op = Eigen::kroneckerProduct(op, factor).eval();
    }
    a_.push_back(op);
    adag_.push_back(SpMat(op.adjoint()));
  }

  totals_.resize(dim_);
  max_levels_.resize(dim_);
  for (int i = 0; i < dim_; ++i) {
    int rest = i, total = 0, hi = 0;
    for (int k = n_modes_ - 1; k >= 0; --k) {
      const int level = rest % cutoff_;
      rest /= cutoff_;
      total += level;
      hi = std::max(hi, level);
    }
    totals_[i] = total;
    max_levels_[i] = hi;
  }
}

int FockSpace::flat_index(const std::vector<int>& multi) const {
  if (static_cast<int>(multi.size()) != n_modes_) {
    throw DimensionError("FockSpace::flat_index: wrong multi-index length");
  }
  int flat = 0;
  for (int k = 0; k < n_modes_; ++k) {
    if (multi[k] < 0 || multi[k] >= cutoff_) {
      throw DimensionError("FockSpace::flat_index: level out of range");
    }
    flat = flat * cutoff_ + multi[k];
  }
  return flat;
}

std::vector<int> FockSpace::multi_index(int flat) const {
  if (flat < 0 || flat >= dim_) throw DimensionError("FockSpace::multi_index: out of range");
  std::vector<int> multi(n_modes_);
  for (int k = n_modes_ - 1; k >= 0; --k) {
    multi[k] = flat % cutoff_;
    flat /= cutoff_;
  }
  return multi;
}

int FockSpace::total_photons(int flat) const { return totals_.at(flat); }
int FockSpace::max_level(int flat) const { return max_levels_.at(flat); }

const SpMat& FockSpace::a(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw DimensionError("FockSpace::a: mode out of range");
  return a_[mode];
}

const SpMat& FockSpace::a_dagger(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw DimensionError("FockSpace::a_dagger: mode out of range");
  return adag_[mode];
}

std::vector<int> FockSpace::kets_with_at_most(int max_total) const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i) {
    if (totals_[i] <= max_total) out.push_back(i);
  }
  return out;
}

std::pair<CMatrix, CMatrix> ladder(const FockSpace& fs, int mode) {
  return {CMatrix(fs.a(mode)), CMatrix(fs.a_dagger(mode))};
}

CVector vec_rowmajor(const CMatrix& rho) {
  const Eigen::Index n = rho.rows();
  CVector v(n * rho.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  return v;
}

CMatrix unvec_rowmajor(const CVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("unvec_rowmajor: length mismatch");
  }
  CMatrix rho(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) rho(i, j) = v(i * dim + j);
  return rho;
}

CMatrix jordan_operator(const FockSpace& fs, const CMatrix& a_coef) {
  if (a_coef.rows() != fs.n_modes() || a_coef.cols() != fs.n_modes()) {
    throw DimensionError("jordan_operator: coefficient matrix must be n_modes x n_modes");
  }
  SpMat j(fs.dim(), fs.dim());
  for (int n = 0; n < fs.n_modes(); ++n)
    for (int m = 0; m < fs.n_modes(); ++m) {
      if (a_coef(n, m) != Complex(0, 0)) j += a_coef(n, m) * SpMat(fs.a_dagger(n) * fs.a(m));
    }
  return CMatrix(j);
}

CMatrix SuperOpMatrix::apply(const CMatrix& rho) const {
  return unvec_rowmajor(mat * vec_rowmajor(rho), hilbert_dim);
}

namespace {

SpMat left_mult(const FockSpace& fs, const SpMat& a) {
  return Eigen::kroneckerProduct(a, sparse_identity(fs.dim())).eval();
}

SpMat right_mult(const FockSpace& fs, const SpMat& a) {
  return Eigen::kroneckerProduct(sparse_identity(fs.dim()), SpMat(a.transpose())).eval();
}

}  // namespace

SpMat superop_assoc_sparse(const FockSpace& fs, AssocKind kind, const CMatrix& a_coef) {
  if (a_coef.rows() != fs.n_modes() || a_coef.cols() != fs.n_modes()) {
    throw DimensionError("superop_assoc: coefficient matrix must be n_modes x n_modes");
  }
  const int ld = fs.liouville_dim();
  SpMat out(ld, ld);
  for (int n = 0; n < fs.n_modes(); ++n) {
    for (int m = 0; m < fs.n_modes(); ++m) {
      const Complex c = a_coef(n, m);
      if (c == Complex(0, 0)) continue;
      switch (kind) {
        case AssocKind::NMinus: {
          const SpMat nd(fs.a_dagger(n) * fs.a(m));
          out += c * SpMat(left_mult(fs, nd) - right_mult(fs, nd));
          break;
        }
        case AssocKind::K0: {
          const SpMat nd(fs.a_dagger(n) * fs.a(m));
          const SpMat dn(fs.a(m) * fs.a_dagger(n));
          out += (0.5 * c) * SpMat(left_mult(fs, nd) + right_mult(fs, dn));
          break;
        }
        case AssocKind::KPlus:
          out += c * SpMat(left_mult(fs, fs.a_dagger(n)) * right_mult(fs, fs.a(m)));
          break;
        case AssocKind::KMinus:
          out += c * SpMat(left_mult(fs, fs.a(m)) * right_mult(fs, fs.a_dagger(n)));
          break;
      }
    }
  }
  out.makeCompressed();
  return out;
}

SuperOpMatrix superop_assoc(const FockSpace& fs, AssocKind kind, const CMatrix& a_coef) {
  return SuperOpMatrix{fs.dim(), CMatrix(superop_assoc_sparse(fs, kind, a_coef))};
}

SpMat liouvillian_sparse(const FockSpace& fs, const SystemSpec& spec) {
  if (spec.n_modes() != fs.n_modes()) {
    throw DimensionError("liouvillian: spec/FockSpace mode-count mismatch");
  }
  const CMatrix gamma = spec.gamma();
  SpMat out = Complex(0, -1) * superop_assoc_sparse(fs, AssocKind::NMinus, spec.omega());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::K0, spec.gamma_zero());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::KPlus, spec.gamma_plus());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::KMinus, spec.gamma_minus());
  out += gamma.trace() * sparse_identity(fs.liouville_dim());
  out.makeCompressed();
  return out;
}

SpMat liouvillian_gksl_sparse(const FockSpace& fs, const SystemSpec& spec) {
  if (spec.n_modes() != fs.n_modes()) {
    throw DimensionError("liouvillian: spec/FockSpace mode-count mismatch");
  }
  const int ld = fs.liouville_dim();
  SpMat out(ld, ld);
  const CMatrix& om = spec.omega();
  const CMatrix& gp = spec.gamma_plus();
  const CMatrix& gm = spec.gamma_minus();
  for (int n = 0; n < fs.n_modes(); ++n) {
    for (int m = 0; m < fs.n_modes(); ++m) {
      const SpMat nd(fs.a_dagger(n) * fs.a(m));    // a_n^dag a_m
      const SpMat dn(fs.a(m) * fs.a_dagger(n));    // a_m a_n^dag
      if (om(n, m) != Complex(0, 0)) {
        out += Complex(0, -1) * om(n, m) * SpMat(left_mult(fs, nd) - right_mult(fs, nd));
      }
      if (gm(n, m) != Complex(0, 0)) {
        out -= gm(n, m) * SpMat(left_mult(fs, nd) + right_mult(fs, nd) -
                                2.0 * SpMat(left_mult(fs, fs.a(m)) * right_mult(fs, fs.a_dagger(n))));
      }
      if (gp(n, m) != Complex(0, 0)) {
        out -= gp(n, m) * SpMat(left_mult(fs, dn) + right_mult(fs, dn) -
                                2.0 * SpMat(left_mult(fs, fs.a_dagger(n)) * right_mult(fs, fs.a(m))));
      }
    }
  }
  out.makeCompressed();
  return out;
}

SpMat liouvillian_adjoint_sparse(const FockSpace& fs, const SystemSpec& spec) {
  if (spec.n_modes() != fs.n_modes()) {
    throw DimensionError("liouvillian_adjoint: spec/FockSpace mode-count mismatch");
  }
  const CMatrix gamma = spec.gamma();
  SpMat out = Complex(0, 1) * superop_assoc_sparse(fs, AssocKind::NMinus, spec.omega());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::K0, spec.gamma_zero());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::KPlus, spec.gamma_minus());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::KMinus, spec.gamma_plus());
  out += gamma.trace() * sparse_identity(fs.liouville_dim());
  out.makeCompressed();
  return out;
}

SpMat liouvillian_diag_sparse(const FockSpace& fs, const SystemSpec& spec) {
  const CMatrix gamma = spec.gamma();
  SpMat out = Complex(0, -1) * superop_assoc_sparse(fs, AssocKind::NMinus, spec.omega());
  out += 2.0 * superop_assoc_sparse(fs, AssocKind::K0, CMatrix(-gamma));
  out += gamma.trace() * sparse_identity(fs.liouville_dim());
  out.makeCompressed();
  return out;
}

namespace {

// Interior columns: basis operators |m><n| with every mode level <= cutoff-2
// on both sides. The GKSL and associated constructions agree exactly there;
// boundary rows carry the truncated-CCR defect.
std::vector<int> interior_pair_indices(const FockSpace& fs, int shell) {
  std::vector<int> out;
  const int hi = fs.cutoff() - 1 - shell;
  for (int i = 0; i < fs.dim(); ++i) {
    if (fs.max_level(i) > hi) continue;
    for (int j = 0; j < fs.dim(); ++j) {
      if (fs.max_level(j) > hi) continue;
      out.push_back(i * fs.dim() + j);
    }
  }
  return out;
}

void assert_paths_agree(const FockSpace& fs, const SpMat& assoc, const SpMat& gksl) {
  const CMatrix da(assoc);
  const CMatrix dg(gksl);
  const auto cols = interior_pair_indices(fs, 1);
  double worst = 0.0;
  for (int c : cols) worst = std::max(worst, (da.col(c) - dg.col(c)).cwiseAbs().maxCoeff());
  const double scale = std::max(1.0, dg.cwiseAbs().maxCoeff());
  if (worst > 1e-12 * scale) {
    throw NumericalError("build_liouvillian: GKSL and associated-matrix paths disagree on interior columns (max " +
                         std::to_string(worst) + ")");
  }
}

}  // namespace

SuperOpMatrix build_liouvillian(const FockSpace& fs, const SystemSpec& spec) {
  SpMat assoc = liouvillian_sparse(fs, spec);
  SpMat gksl = liouvillian_gksl_sparse(fs, spec);
  assert_paths_agree(fs, assoc, gksl);
  return SuperOpMatrix{fs.dim(), CMatrix(gksl)};
}

SuperOpMatrix build_adjoint(const FockSpace& fs, const SystemSpec& spec) {
  return SuperOpMatrix{fs.dim(), CMatrix(liouvillian_adjoint_sparse(fs, spec))};
}

SuperOpMatrix build_liouvillian_diag(const FockSpace& fs, const SystemSpec& spec) {
  return SuperOpMatrix{fs.dim(), CMatrix(liouvillian_diag_sparse(fs, spec))};
}

namespace {

template <typename Op>
CVector expm_action(const Op& apply_op, double op_norm, const CVector& v, double t) {
  if (t == 0.0) return v;
  const double scaled = std::abs(t) * op_norm;
  const int steps = std::max(1, static_cast<int>(std::ceil(scaled)));
  const double h = t / steps;
  CVector x = v;
  for (int s = 0; s < steps; ++s) {
    CVector term = x;
    CVector sum = x;
    for (int k = 1; k <= 80; ++k) {
      term = apply_op(term) * (h / k);
      sum += term;
      if (term.norm() <= 1e-16 * sum.norm()) break;
    }
    x = sum;
  }
  return x;
}

double one_norm(const SpMat& s) {
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(s.cols());
  for (int k = 0; k < s.outerSize(); ++k)
    for (SpMat::InnerIterator it(s, k); it; ++it) colsum(it.col()) += std::abs(it.value());
  return colsum.size() ? colsum.maxCoeff() : 0.0;
}

}  // namespace

CVector apply_expm(const SpMat& s, const CVector& v, double t) {
  return expm_action([&](const CVector& x) { return CVector(s * x); }, one_norm(s), v, t);
}

CVector apply_expm(const SuperOpMatrix& s, const CVector& v, double t) {
  const double n1 = s.mat.cwiseAbs().colwise().sum().maxCoeff();
  return expm_action([&](const CVector& x) { return CVector(s.mat * x); }, n1, v, t);
}

namespace {

PropagationResult finish_propagation(const FockSpace& fs, const CVector& v) {
  PropagationResult out;
  out.rho_t = unvec_rowmajor(v, fs.dim());
  double boundary = 0.0;
  for (int i = 0; i < fs.dim(); ++i)
    for (int j = 0; j < fs.dim(); ++j) {
      if (fs.max_level(i) == fs.cutoff() - 1 || fs.max_level(j) == fs.cutoff() - 1) {
        boundary += std::norm(out.rho_t(i, j));
      }
    }
  out.boundary_mass = std::sqrt(boundary);
  out.truncation_warning = out.boundary_mass > 1e-10;
  return out;
}

void check_propagation_input(const FockSpace& fs, const CMatrix& rho0, double t) {
  if (t < 0) throw NumericalError("oracle_propagate: t must be nonnegative");
  if (rho0.rows() != fs.dim() || rho0.cols() != fs.dim()) {
    throw DimensionError("oracle_propagate: state dimension mismatch");
  }
}

}  // namespace

PropagationResult oracle_propagate(const FockSpace& fs, const SpMat& liouville,
                                   const CMatrix& rho0, double t) {
  check_propagation_input(fs, rho0, t);
  return finish_propagation(fs, apply_expm(liouville, vec_rowmajor(rho0), t));
}

PropagationResult oracle_propagate(const FockSpace& fs, const SuperOpMatrix& liouville,
                                   const CMatrix& rho0, double t) {
  check_propagation_input(fs, rho0, t);
  return finish_propagation(fs, apply_expm(liouville, vec_rowmajor(rho0), t));
}

namespace {

// Series of a photon-raising/lowering generator terminates in the truncated
// space (both K+_I and K-_I are nilpotent there).
CVector nilpotent_exp_action(const SpMat& gen, double alpha, const CVector& v) {
  CVector term = v;
  CVector sum = v;
  const int max_terms = 4 * static_cast<int>(std::sqrt(static_cast<double>(gen.rows()))) + 8;
  for (int k = 1; k <= max_terms; ++k) {
    term = (gen * term) * (alpha / k);
    if (term.isZero(0.0)) break;
    sum += term;
  }
  return sum;
}

SpMat kplus_identity(const FockSpace& fs) {
  return superop_assoc_sparse(fs, AssocKind::KPlus, CMatrix::Identity(fs.n_modes(), fs.n_modes()));
}

SpMat kminus_identity(const FockSpace& fs) {
  return superop_assoc_sparse(fs, AssocKind::KMinus, CMatrix::Identity(fs.n_modes(), fs.n_modes()));
}

}  // namespace

CVector apply_exp_kplus(const FockSpace& fs, double alpha, const CVector& v) {
  return nilpotent_exp_action(kplus_identity(fs), alpha, v);
}

CVector apply_exp_kminus(const FockSpace& fs, double alpha, const CVector& v) {
  return nilpotent_exp_action(kminus_identity(fs), alpha, v);
}

int required_margin(double n_T, int max_photons, double tol) {
  if (n_T <= 0.0) return 1;
  const double ez = n_T / (n_T + 1.0);
  int m = 1;
  while (m < 200) {
    // leading truncated-tail coefficient: ez^m * binom(max_photons+m, m)^2
    double log_coef = m * std::log(ez);
    for (int k = 1; k <= m; ++k) {
      log_coef += 2.0 * (std::log(static_cast<double>(max_photons + k)) -
                         std::log(static_cast<double>(k)));
    }
    if (log_coef < std::log(tol)) return m;
    ++m;
  }
  return m;
}

namespace {

SpMat nilpotent_exp_matrix(const SpMat& gen, double alpha) {
  const int n = static_cast<int>(gen.rows());
  SpMat sum = sparse_identity(n);
  SpMat term = sparse_identity(n);
  const int max_terms = 4 * static_cast<int>(std::sqrt(static_cast<double>(n))) + 8;
  for (int k = 1; k <= max_terms; ++k) {
    term = SpMat((gen * term) * (alpha / k));
    term.prune(0.0, 0.0);
    if (term.nonZeros() == 0) break;
    sum += term;
  }
  sum.makeCompressed();
  return sum;
}

}  // namespace

JumpEliminationReport validate_jump_elimination(const FockSpace& fs, const ThermalRates& rates,
                                                const CMatrix& omega, const CMatrix& gamma,
                                                int max_photons) {
  const SystemSpec spec = SystemSpec::thermal(omega, gamma, rates.n_T);
  const SpMat liouville = liouvillian_sparse(fs, spec);
  const SpMat diag = liouvillian_diag_sparse(fs, spec);
  const SpMat kp = kplus_identity(fs);
  const SpMat km = kminus_identity(fs);

  const auto tpm = [&](const CVector& v) {  // e^{-n_T K+} e^{K-}
    return nilpotent_exp_action(kp, -rates.n_T, nilpotent_exp_action(km, 1.0, v));
  };
  const auto tmp_inv = [&](const CVector& v) {  // e^{e^{-z_T} K+} e^{-Z K-}
    return nilpotent_exp_action(kp, rates.exp_minus_zT, nilpotent_exp_action(km, -rates.Z, v));
  };

  // mask away the one-level boundary shell
  std::vector<bool> interior(fs.liouville_dim(), false);
  for (int p : interior_pair_indices(fs, 1)) interior[p] = true;
  const auto interior_norm = [&](const CVector& v) {
    double acc = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      if (interior[i]) acc += std::norm(v(i));
    }
    return std::sqrt(acc);
  };

  JumpEliminationReport rep;
  for (int i : fs.kets_with_at_most(max_photons)) {
    for (int j : fs.kets_with_at_most(max_photons)) {
      CVector basis = CVector::Zero(fs.liouville_dim());
      basis(i * fs.dim() + j) = 1.0;
      const CVector lv = liouville * basis;
      const CVector lhs_pm = tpm(lv);
      const CVector rhs_pm = diag * tpm(basis);
      rep.residual_plus_minus = std::max(rep.residual_plus_minus, interior_norm(lhs_pm - rhs_pm));
      const CVector lhs_mp = liouville * tmp_inv(basis);
      const CVector rhs_mp = tmp_inv(CVector(diag * basis));
      rep.residual_minus_plus = std::max(rep.residual_minus_plus, interior_norm(lhs_mp - rhs_mp));
      rep.scale = std::max({rep.scale, lhs_pm.norm(), lhs_mp.norm()});
    }
  }
  return rep;
}

JumpTransform jump_transform(const FockSpace& fs, const ThermalRates& rates,
                             const CMatrix& omega, const CMatrix& gamma,
                             JumpOrdering ordering, int max_photons, double tol) {
  const int margin = required_margin(rates.n_T, max_photons, tol);
  if (fs.cutoff() - 1 < max_photons + margin) {
    throw NumericalError("jump_transform: insufficient cutoff margin (need cutoff >= " +
                         std::to_string(max_photons + margin + 1) + " for n_T = " +
                         std::to_string(rates.n_T) + ", tol " + std::to_string(tol) + ")");
  }
  const SpMat kp = kplus_identity(fs);
  const SpMat km = kminus_identity(fs);

  JumpTransform out;
  out.ordering = ordering;
  SpMat t, tinv;
  if (ordering == JumpOrdering::PlusMinus) {
    // T_{+-} = e^{-n_T K+} e^{K-};  T_{+-}^{-1} = T_{-+}(-1, n_T)
    out.coef_plus = -rates.n_T;
    out.coef_minus = 1.0;
    t = SpMat(nilpotent_exp_matrix(kp, -rates.n_T) * nilpotent_exp_matrix(km, 1.0));
    tinv = SpMat(nilpotent_exp_matrix(km, -1.0) * nilpotent_exp_matrix(kp, rates.n_T));
  } else {
    // T_{-+} = e^{Z K-} e^{-e^{-z_T} K+};  T_{-+}^{-1} = T_{+-}(e^{-z_T}, -Z)
    out.coef_plus = -rates.exp_minus_zT;
    out.coef_minus = rates.Z;
    t = SpMat(nilpotent_exp_matrix(km, rates.Z) * nilpotent_exp_matrix(kp, -rates.exp_minus_zT));
    tinv = SpMat(nilpotent_exp_matrix(kp, rates.exp_minus_zT) * nilpotent_exp_matrix(km, -rates.Z));
  }
  out.t_matrix = SuperOpMatrix{fs.dim(), CMatrix(t)};
  out.t_inverse = SuperOpMatrix{fs.dim(), CMatrix(tinv)};

  const auto rep = validate_jump_elimination(fs, rates, omega, gamma, max_photons);
  out.elimination_residual = (ordering == JumpOrdering::PlusMinus) ? rep.residual_plus_minus
                                                                   : rep.residual_minus_plus;
  if (out.elimination_residual > tol * std::max(1.0, rep.scale)) {
    throw NumericalError("jump_transform: elimination identity residual " +
                         std::to_string(out.elimination_residual) + " exceeds tolerance");
  }
  return out;
}

std::vector<int> sector_members(const FockSpace& fs, int delta) {
  std::vector<int> out;
  for (int i = 0; i < fs.dim(); ++i)
    for (int j = 0; j < fs.dim(); ++j) {
      if (fs.total_photons(i) - fs.total_photons(j) == delta) out.push_back(i * fs.dim() + j);
    }
  return out;
}

SpMat sector_block(const SpMat& sup, const std::vector<int>& members) {
  const int n = static_cast<int>(members.size());
  std::vector<int> where(sup.rows(), -1);
  for (int k = 0; k < n; ++k) where[members[k]] = k;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int col = 0; col < n; ++col) {
    for (SpMat::InnerIterator it(sup, members[col]); it; ++it) {
      const int r = where[it.row()];
      if (r >= 0) trips.emplace_back(r, col, it.value());
    }
  }
  SpMat out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

EigenPairResult nearest_eigenpair(const SpMat& a, Complex shift, int max_iter, double tol) {
  const int n = static_cast<int>(a.rows());
  EigenPairResult out;
  out.converged = false;
  SpMat shifted = a;
  for (int k = 0; k < n; ++k) shifted.coeffRef(k, k) -= shift;
  shifted.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) {
    // shift sits numerically on an eigenvalue; nudge it off
    shifted = a;
    const Complex nudged = shift + Complex(1e-10, 1e-10);
    for (int k = 0; k < n; ++k) shifted.coeffRef(k, k) -= nudged;
    shifted.makeCompressed();
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("nearest_eigenpair: sparse LU factorization failed");
    }
  }
  CVector x = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
  const double scale = one_norm(a);
  Complex mu = shift;
  for (int it = 0; it < max_iter; ++it) {
    CVector y = lu.solve(x);
    if (!y.allFinite()) throw NumericalError("nearest_eigenpair: inverse iteration diverged");
    x = y / y.norm();
    mu = x.adjoint().dot((a * x).eval());
    const double res = ((a * x).eval() - mu * x).norm();
    out.residual = res / std::max(1.0, scale);
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
  }
  out.value = mu;
  out.vector = x;
  return out;
}

CMatrix fock_lift(const FockSpace& fs, const CMatrix& m) {
  if (m.rows() != fs.n_modes() || m.cols() != fs.n_modes()) {
    throw DimensionError("fock_lift: matrix must be n_modes x n_modes");
  }
  // transformed creation operators b_i^dag = sum_j M_ji a_j^dag
  std::vector<SpMat> b(fs.n_modes());
  for (int i = 0; i < fs.n_modes(); ++i) {
    SpMat acc(fs.dim(), fs.dim());
    for (int j = 0; j < fs.n_modes(); ++j) acc += m(j, i) * fs.a_dagger(j);
    b[i] = acc;
  }
  CMatrix lift = CMatrix::Zero(fs.dim(), fs.dim());
  for (int col = 0; col < fs.dim(); ++col) {
    const auto multi = fs.multi_index(col);
    CVector ket = CVector::Zero(fs.dim());
    ket(0) = 1.0;  // vacuum
    double fact = 1.0;
    for (int i = 0; i < fs.n_modes(); ++i) {
      for (int p = 0; p < multi[i]; ++p) {
        ket = b[i] * ket;
        fact *= (p + 1);
      }
    }
    lift.col(col) = ket / std::sqrt(fact);
  }
  return lift;
}

}  // namespace lindblad
