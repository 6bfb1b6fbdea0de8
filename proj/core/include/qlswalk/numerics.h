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

#ifndef QLSWALK_NUMERICS_H_
#define QLSWALK_NUMERICS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlswalk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Relative cutoff below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-10;
// Relative residual above which a right-hand side is declared outside the
// column space.
inline constexpr double kConsistencyTolerance = 1e-8;

class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentSystemError : public NumericsError {
 public:
  InconsistentSystemError(const std::string& what, double residual)
      : NumericsError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NotUnitaryError : public NumericsError {
 public:
  NotUnitaryError(const std::string& what, double deviation)
      : NumericsError(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

struct SvdFactorization {
  Matrix u;                // m x k left singular vectors
  Vector singular_values;  // non-increasing, length k = min(m, n)
  Matrix v;                // n x n when computed full, n x k otherwise
  Index rank = 0;
  double rank_tolerance = kRankTolerance;

  double sigma_max() const;
  // Smallest singular value above the rank cutoff; 0 for the zero matrix.
  double sigma_min_nonzero() const;
  // sigma_max / sigma_min_nonzero, the condition number on the support.
  double condition_number() const;
  Matrix reconstruct() const;
  // Orthonormal basis of Null(M); requires a full right factor.
  Matrix null_space_basis() const;
  Matrix column_space_basis() const { return u.leftCols(rank); }
};

enum class SvdVectors { kNone, kThin, kFull };

SvdFactorization svd(const Matrix& m, double rank_tolerance = kRankTolerance,
                     SvdVectors vectors = SvdVectors::kThin);

// Singular values only, non-increasing.
Vector singular_values(const Matrix& m);

// Ratio of largest to smallest nonzero singular value.
double condition_number(const Matrix& m,
                        double rank_tolerance = kRankTolerance);

// M^+ rhs, after checking that rhs lies in col(M).
Vector min_norm_solve(const Matrix& m, const Vector& rhs,
                      double consistency_tolerance = kConsistencyTolerance,
                      double rank_tolerance = kRankTolerance);
Vector min_norm_solve(const SvdFactorization& f, const Vector& rhs,
                      double consistency_tolerance = kConsistencyTolerance);

// M^+ rhs by truncated SVD, no consistency check.
Vector pseudoinverse_apply(const Matrix& m, const Vector& rhs,
                           double rank_tolerance = kRankTolerance);
Matrix pseudoinverse(const Matrix& m, double rank_tolerance = kRankTolerance);

// Relative distance of rhs from col(M): |rhs - P rhs| / |rhs|.
double column_space_residual(const SvdFactorization& f, const Vector& rhs);

struct UnitaryEigensystem {
  Vector phases;             // in (-pi, pi]
  CMatrix vectors;           // orthonormal columns
  Vector residuals;          // |U v_k - e^{i phase_k} v_k|
  double max_residual() const;
  double orthonormality_defect() const;
  // Sum of v_k v_k^H over |phase_k| <= delta.
  CMatrix phase_projector(double delta) const;
};

UnitaryEigensystem unitary_eig(const CMatrix& u, double unitarity_tolerance = 1e-8);

void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

// Pure-state trace distance sqrt(1 - |<a|b>|^2) for unit vectors.
double trace_distance(const Vector& a, const Vector& b);

// Uniform double in [0, 1) from 53 random bits.
template <typename Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace qlswalk

#endif  // QLSWALK_NUMERICS_H_
