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

#ifndef QLSWALK_MACAULAY_H_
#define QLSWALK_MACAULAY_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlswalk/numerics.h"
#include "qlswalk/qpe_sim.h"
#include "qlswalk/system_model.h"

namespace qlswalk {

// Multilinear monomial as a variable bitmask; bit k is x_k. Also used for
// Boolean assignments.
using Monomial = std::uint32_t;

inline constexpr int kMaxVariables = 24;

int degree(Monomial m);

// x_k^e -> x_k for e >= 1; exponents[k] is the power of x_k.
Monomial boolean_reduce(const std::vector<int>& exponents);
// psi(a * b) for multilinear a and b.
inline Monomial boolean_product(Monomial a, Monomial b) { return a | b; }

std::string monomial_to_string(Monomial m);

struct Term {
  double coefficient = 0.0;
  Monomial monomial = 0;
};

using Polynomial = std::vector<Term>;

struct PolynomialSystem {
  int num_vars = 0;
  std::vector<Polynomial> polynomials;

  // Throws on degree > 2, non-finite coefficients or out-of-range variables.
  void validate() const;
  double evaluate(std::size_t k, Monomial assignment) const;
  bool satisfied_by(Monomial assignment, double tolerance = 1e-9) const;
};

// All Boolean solutions by exhaustive search (num_vars <= 24).
std::vector<Monomial> brute_force_solutions(const PolynomialSystem& f);

// {x_1 + ... + x_n - n}, whose only Boolean solution is all-ones.
PolynomialSystem make_sum_system(int n);

struct MacaulayRow {
  Monomial multiplier = 0;
  int polynomial = 0;
};

struct MacaulaySystem {
  int num_vars = 0;
  int weight = 0;  // Hamming weight h used for the rescaling
  bool pruned = false;
  std::vector<Monomial> columns;  // non-constant monomials; constant column is implicit
  std::unordered_map<Monomial, Index> column_index;
  std::vector<MacaulayRow> rows;
  std::vector<Monomial> vanishing;  // monomials forced to zero by single-term equations
  Matrix a;
  Vector b;          // minus the constant-term column
  Vector rescaling;  // diagonal of D

  // y over columns for a Boolean assignment: y_m = 1 iff m is contained in it.
  Vector monomial_vector(Monomial assignment) const;
};

// Refuses systems whose dense matrix exceeds max_dense_entries.
MacaulaySystem build_macaulay(const PolynomialSystem& f, int weight, bool prune,
                              std::size_t max_dense_entries = std::size_t{1} << 25);

// Augmented system for A D z = b.
AugmentedSystem rescale(const MacaulaySystem& ms);

// p on the rows of the unpruned sum system with h = n: 1 / C(n, deg m).
Vector closed_form_p_sum_example(const MacaulaySystem& ms);

enum class RecoveryBackend { kWalk, kKernel, kOracle };

const char* to_string(RecoveryBackend backend);
RecoveryBackend parse_recovery_backend(const std::string& name);

// Output of the linear-system stage, reusable across sampling trials.
struct RecoveryPlan {
  MacaulaySystem macaulay;
  AugmentedSystem weighted;
  RecoveryBackend backend = RecoveryBackend::kOracle;
  Vector state;                   // normalized amplitudes over columns
  std::vector<double> cumulative;  // running sum of squared amplitudes
  std::optional<QlsRun> run;
};

struct RecoveryOptions {
  RecoveryBackend backend = RecoveryBackend::kWalk;
  double epsilon = 0.05;
  bool prune = true;
  std::uint64_t seed = 0;
};

RecoveryPlan prepare_recovery(const PolynomialSystem& f, int weight,
                              const RecoveryOptions& options);

int recovery_rounds(int num_vars, double delta_fail);

struct RecoveryResult {
  Monomial assignment = 0;
  std::vector<Monomial> samples;
  bool verified = false;
};

// Samples 4 ceil(log2(n / delta_fail)) supports and returns their union.
RecoveryResult recover_assignment(const RecoveryPlan& plan, const PolynomialSystem& f,
                                  double delta_fail, std::mt19937_64& rng);

class VerificationError : public NumericsError {
 public:
  VerificationError(const std::string& what, RecoveryResult result)
      : NumericsError(what), result_(std::move(result)) {}
  const RecoveryResult& result() const { return result_; }

 private:
  RecoveryResult result_;
};

struct PolynomialSolve {
  int weight = 0;
  RecoveryResult result;
  RecoveryPlan plan;
};

// Throws VerificationError when the recovered assignment fails a polynomial.
PolynomialSolve solve_polynomial_system(const PolynomialSystem& f, int weight,
                                        double delta_fail, const RecoveryOptions& options);

// Tries h = 1..n and returns the first verified assignment.
std::optional<PolynomialSolve> solve_polynomial_system_any_weight(
    const PolynomialSystem& f, double delta_fail, const RecoveryOptions& options);

}  // namespace qlswalk

#endif  // QLSWALK_MACAULAY_H_
