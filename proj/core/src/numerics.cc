// Copyright 2026 The qlswalk Authors
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

#include "qlswalk/numerics.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qlswalk {

namespace {

std::string dims(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

Index count_rank(const Vector& sv, double tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NumericsError(std::string(what) + " " + dims(m) +
                        " has non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw NumericsError(std::string(what) + " has non-finite entries");
  }
}

double SvdFactorization::sigma_max() const {
  return singular_values.size() ? singular_values(0) : 0.0;
}

double SvdFactorization::sigma_min_nonzero() const {
  return rank > 0 ? singular_values(rank - 1) : 0.0;
}

double SvdFactorization::condition_number() const {
  if (rank == 0) throw NumericsError("condition number of a zero matrix");
  return sigma_max() / sigma_min_nonzero();
}

Matrix SvdFactorization::reconstruct() const {
  const Index k = singular_values.size();
  return u.leftCols(k) * singular_values.asDiagonal() * v.leftCols(k).transpose();
}

Matrix SvdFactorization::null_space_basis() const {
  if (v.cols() != v.rows()) {
    throw NumericsError("null space basis needs the full right factor");
  }
  return v.rightCols(v.cols() - rank);
}

SvdFactorization svd(const Matrix& m, double rank_tolerance, SvdVectors vectors) {
  require_finite(m, "svd input");
  SvdFactorization out;
  out.rank_tolerance = rank_tolerance;
  if (m.size() == 0) {
    out.u = Matrix::Identity(m.rows(), 0);
    out.v = Matrix::Identity(m.cols(), vectors == SvdVectors::kFull ? m.cols() : 0);
    return out;
  }
  unsigned int opts = 0;
  if (vectors == SvdVectors::kThin) opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (vectors == SvdVectors::kFull) opts = Eigen::ComputeThinU | Eigen::ComputeFullV;
  Eigen::BDCSVD<Matrix> dec(m, opts);
  if (dec.info() != Eigen::Success) {
    throw NumericsError("svd did not converge for a " + dims(m) + " matrix");
  }
  out.singular_values = dec.singularValues();
  if (vectors != SvdVectors::kNone) {
    out.u = dec.matrixU();
    out.v = dec.matrixV();
  }
  out.rank = count_rank(out.singular_values, rank_tolerance);
  return out;
}

Vector singular_values(const Matrix& m) {
  return svd(m, kRankTolerance, SvdVectors::kNone).singular_values;
}

double condition_number(const Matrix& m, double rank_tolerance) {
  return svd(m, rank_tolerance, SvdVectors::kNone).condition_number();
}

double column_space_residual(const SvdFactorization& f, const Vector& rhs) {
  const double norm = rhs.norm();
  if (norm == 0.0) return 0.0;
  const Matrix ur = f.u.leftCols(f.rank);
  return (rhs - ur * (ur.transpose() * rhs)).norm() / norm;
}

Vector min_norm_solve(const SvdFactorization& f, const Vector& rhs,
                      double consistency_tolerance) {
  require_finite(rhs, "right-hand side");
  if (rhs.size() != f.u.rows()) {
    throw NumericsError("right-hand side length does not match the matrix");
  }
  const double residual = column_space_residual(f, rhs);
  if (residual > consistency_tolerance) {
    std::ostringstream os;
    os << "no exact solution: relative distance of rhs from the column space is "
       << residual;
    throw InconsistentSystemError(os.str(), residual);
  }
  const Index r = f.rank;
  const Vector coeff = (f.u.leftCols(r).transpose() * rhs).cwiseQuotient(
      f.singular_values.head(r));
  return f.v.leftCols(r) * coeff;
}

Vector min_norm_solve(const Matrix& m, const Vector& rhs,
                      double consistency_tolerance, double rank_tolerance) {
  return min_norm_solve(svd(m, rank_tolerance), rhs, consistency_tolerance);
}

Vector pseudoinverse_apply(const Matrix& m, const Vector& rhs, double rank_tolerance) {
  require_finite(rhs, "right-hand side");
  const SvdFactorization f = svd(m, rank_tolerance);
  const Index r = f.rank;
  const Vector coeff = (f.u.leftCols(r).transpose() * rhs).cwiseQuotient(
      f.singular_values.head(r));
  return f.v.leftCols(r) * coeff;
}

Matrix pseudoinverse(const Matrix& m, double rank_tolerance) {
  const SvdFactorization f = svd(m, rank_tolerance);
  const Index r = f.rank;
  return f.v.leftCols(r) * f.singular_values.head(r).cwiseInverse().asDiagonal() *
         f.u.leftCols(r).transpose();
}

double UnitaryEigensystem::max_residual() const {
  return residuals.size() ? residuals.maxCoeff() : 0.0;
}

double UnitaryEigensystem::orthonormality_defect() const {
  const CMatrix gram = vectors.adjoint() * vectors;
  return (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

CMatrix UnitaryEigensystem::phase_projector(double delta) const {
  const Index n = vectors.rows();
  CMatrix proj = CMatrix::Zero(n, n);
  for (Index k = 0; k < phases.size(); ++k) {
    if (std::abs(phases(k)) <= delta) {
      proj.noalias() += vectors.col(k) * vectors.col(k).adjoint();
    }
  }
  return proj;
}

UnitaryEigensystem unitary_eig(const CMatrix& u, double unitarity_tolerance) {
  if (u.rows() != u.cols()) throw NumericsError("unitary_eig needs a square matrix");
  if (!u.allFinite()) throw NumericsError("unitary_eig input has non-finite entries");
  const Index n = u.rows();
  const double deviation =
      (u.adjoint() * u - CMatrix::Identity(n, n)).norm();
  if (deviation > unitarity_tolerance) {
    std::ostringstream os;
    os << "input is not unitary: |U^H U - I|_F = " << deviation;
    throw NotUnitaryError(os.str(), deviation);
  }
  UnitaryEigensystem out;
  out.phases.resize(n);
  out.residuals.resize(n);
  if (n == 0) return out;
  // U is normal, so its complex Schur form is diagonal up to roundoff and the
  // Schur vectors are an orthonormal eigenbasis.
  Eigen::ComplexSchur<CMatrix> schur(u, true);
  if (schur.info() != Eigen::Success) {
    throw NumericsError("complex Schur iteration did not converge");
  }
  out.vectors = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  const CMatrix uv = u * out.vectors;
  for (Index k = 0; k < n; ++k) {
    const std::complex<double> lambda = t(k, k) / std::abs(t(k, k));
    double phase = std::arg(lambda);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    out.phases(k) = phase;
    out.residuals(k) = (uv.col(k) - lambda * out.vectors.col(k)).norm();
  }
  return out;
}

double trace_distance(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw NumericsError("trace distance of a zero vector");
  // sqrt(1 - <a,b>^2) equals the norm of the part of a orthogonal to b; the
  // latter keeps full precision when the states nearly coincide.
  const Vector ua = a / na;
  const Vector ub = b / nb;
  return std::min(1.0, (ua - ua.dot(ub) * ub).norm());
}

}  // namespace qlswalk
