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

#include "qlswalk/macaulay.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "oracles.h"
#include "qlswalk/mis.h"

namespace qlswalk {
namespace {

constexpr Monomial x(int k) { return Monomial{1} << (k - 1); }  // 1-based

TEST(BooleanReduce, CollapsesPowers) {
  EXPECT_EQ(boolean_reduce({2, 1}), x(1) | x(2));
  EXPECT_EQ(boolean_reduce({0, 0, 1}), x(3));
  EXPECT_EQ(boolean_product(x(1) | x(2), x(2) | x(3)), x(1) | x(2) | x(3));
  EXPECT_THROW(boolean_reduce({-1}), NumericsError);
  EXPECT_EQ(monomial_to_string(x(1) | x(3)), "x1*x3");
  EXPECT_EQ(monomial_to_string(0), "1");
  EXPECT_EQ(degree(x(2) | x(5)), 2);
}

TEST(PolynomialSystem, ValidationAndEvaluation) {
  PolynomialSystem f;
  f.num_vars = 3;
  f.polynomials = {{{1.0, x(1) | x(2)}, {-2.0, x(3)}, {1.0, 0}}};
  EXPECT_NO_THROW(f.validate());
  EXPECT_DOUBLE_EQ(f.evaluate(0, x(1) | x(2)), 2.0);
  EXPECT_TRUE(f.satisfied_by(x(1) | x(2) | x(3)));
  EXPECT_FALSE(f.satisfied_by(x(3)));
  EXPECT_EQ(brute_force_solutions(f), (std::vector<Monomial>{x(1) | x(2) | x(3)}));
  f.polynomials[0].push_back({1.0, x(1) | x(2) | x(3)});
  EXPECT_THROW(f.validate(), NumericsError);
}

TEST(PolynomialSystem, BruteForceFindsAllSolutions) {
  // x1 + x2 = 1 has exactly the solutions 01 and 10.
  PolynomialSystem f;
  f.num_vars = 2;
  f.polynomials = {{{1.0, x(1)}, {1.0, x(2)}, {-1.0, 0}}};
  EXPECT_EQ(brute_force_solutions(f), (std::vector<Monomial>{x(1), x(2)}));
  EXPECT_EQ(brute_force_solutions(make_sum_system(5)), (std::vector<Monomial>{0b11111}));
}

TEST(BuildMacaulay, HandExpandedRow) {
  PolynomialSystem f;
  f.num_vars = 2;
  f.polynomials = {{{1.0, x(1)}, {1.0, x(2)}, {-2.0, 0}}};
  const MacaulaySystem ms = build_macaulay(f, 2, false);
  EXPECT_EQ(ms.columns, (std::vector<Monomial>{x(1), x(2), x(1) | x(2)}));
  ASSERT_EQ(ms.rows[0].multiplier, 0U);
  EXPECT_EQ(Vector(ms.a.row(0)), (Vector{{1, 1, 0}}));
  EXPECT_DOUBLE_EQ(ms.b(0), 2.0);
  // psi(x1 f) = x1 + x1 x2 - 2 x1.
  ASSERT_EQ(ms.rows[1].multiplier, x(1));
  EXPECT_EQ(Vector(ms.a.row(1)), (Vector{{-1, 0, 1}}));
  EXPECT_DOUBLE_EQ(ms.b(1), 0.0);
  EXPECT_LE((ms.rescaling - Vector{{std::sqrt(2.0), std::sqrt(2.0), 1.0}}).norm(), 1e-15);
}

TEST(BuildMacaulay, SingleTermPolynomialPrunesMultiples) {
  PolynomialSystem f;
  f.num_vars = 3;
  f.polynomials = {{{1.0, x(1) | x(2)}}, {{1.0, x(1)}, {1.0, x(2)}, {1.0, x(3)}, {-1.0, 0}}};
  const MacaulaySystem pruned = build_macaulay(f, 1, true);
  EXPECT_EQ(pruned.vanishing, (std::vector<Monomial>{x(1) | x(2)}));
  for (Monomial c : pruned.columns) EXPECT_NE(c & (x(1) | x(2)), x(1) | x(2));
  EXPECT_EQ(pruned.columns.size(), 5U);  // x1 x2 x3 x1x3 x2x3
  const MacaulaySystem full = build_macaulay(f, 1, false);
  EXPECT_EQ(full.columns.size(), 7U);
}

TEST(BuildMacaulay, Caps) {
  EXPECT_THROW(build_macaulay(make_sum_system(6), 6, false, 100), NumericsError);
  EXPECT_THROW(build_macaulay(make_sum_system(15), 15, false), NumericsError);
  EXPECT_THROW(build_macaulay(make_sum_system(4), 5, false), NumericsError);
}

TEST(SumExample, SolutionCorrespondenceAndNorm) {
  for (int n = 3; n <= 8; ++n) {
    const MacaulaySystem ms = build_macaulay(make_sum_system(n), n, false);
    const AugmentedSystem w = rescale(ms);
    const Vector z = min_norm_solve(w.a, w.b);
    const Vector y = min_norm_solve(ms.a, ms.b);
    EXPECT_NEAR(z.squaredNorm(), n, 1e-8) << n;
    EXPECT_LE((ms.rescaling.cwiseProduct(z) - y).cwiseAbs().maxCoeff(), 1e-8) << n;
    EXPECT_LE((y - ms.monomial_vector((Monomial{1} << n) - 1)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SumExample, ClosedFormPotentials) {
  for (int n = 3; n <= 6; ++n) {
    const MacaulaySystem ms = build_macaulay(make_sum_system(n), n, false);
    const AugmentedSystem w = rescale(ms);
    const Vector direct = pseudoinverse_apply(w.a * w.a.transpose(), w.b);
    const Vector closed = closed_form_p_sum_example(ms);
    for (Index r = 0; r < direct.size(); ++r) {
      // The top-degree multiplier gives an identically zero row.
      if (w.row_sq_norms(r) == 0.0) {
        EXPECT_EQ(std::popcount(ms.rows[static_cast<std::size_t>(r)].multiplier), n);
        continue;
      }
      EXPECT_NEAR(direct(r), closed(r), 1e-7) << n << " row " << r;
    }
    EXPECT_NEAR(closed(0), 1.0, 0.0);
  }
  const MacaulaySystem ms4 = build_macaulay(make_sum_system(4), 4, false);
  const Vector c4 = closed_form_p_sum_example(ms4);
  for (std::size_t r = 0; r < ms4.rows.size(); ++r) {
    if (std::popcount(ms4.rows[r].multiplier) == 2) EXPECT_DOUBLE_EQ(c4(static_cast<Index>(r)), 1.0 / 6.0);
  }
}

TEST(SumExample, EtStaysPolynomial) {
  // Frozen from direct summation with an independent pseudoinverse.
  const double frozen[] = {25.333333333333, 52.083333333333, 92.2, 148.05, 221.942857142856, 316.146428571445};
  for (int n = 3; n <= 8; ++n) {
    const InstanceMetrics m = compute_metrics(rescale(build_macaulay(make_sum_system(n), n, false)));
    EXPECT_NEAR(m.et, frozen[n - 3], 1e-9 * frozen[n - 3]) << n;
    EXPECT_LE(m.et, 5.0 * n * n * n);
  }
}

TEST(Pruning, SoundOnIndependentSetSystems) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const MisInstance inst = make_planted_mis(7, 3, 0.3, seed);
    const PolynomialSystem f = mis_encode(inst);
    const MacaulaySystem full = build_macaulay(f, 3, false);
    const MacaulaySystem pruned = build_macaulay(f, 3, true);
    const AugmentedSystem wf = rescale(full);
    const AugmentedSystem wp = rescale(pruned);
    const Vector zf = min_norm_solve(wf.a, wf.b);
    const Vector zp = min_norm_solve(wp.a, wp.b);
    for (std::size_t c = 0; c < full.columns.size(); ++c) {
      const auto it = pruned.column_index.find(full.columns[c]);
      const double expected = it == pruned.column_index.end() ? 0.0 : zp(it->second);
      EXPECT_NEAR(zf(static_cast<Index>(c)), expected, 1e-8) << seed;
    }
    EXPECT_NEAR(zp.squaredNorm(), 3.0, 1e-8);
  }
}

TEST(Recovery, RoundCount) {
  EXPECT_EQ(recovery_rounds(8, 0.05), 32);
  EXPECT_EQ(recovery_rounds(6, 0.05), 28);
  EXPECT_THROW(recovery_rounds(6, 0.0), NumericsError);
}

TEST(Recovery, BackendNames) {
  for (RecoveryBackend b : {RecoveryBackend::kWalk, RecoveryBackend::kKernel, RecoveryBackend::kOracle}) {
    EXPECT_EQ(parse_recovery_backend(to_string(b)), b);
  }
  EXPECT_THROW(parse_recovery_backend("hhl"), NumericsError);
}

TEST(Recovery, SumExampleAllOnes) {
  for (RecoveryBackend b : {RecoveryBackend::kWalk, RecoveryBackend::kKernel, RecoveryBackend::kOracle}) {
    RecoveryOptions o;
    o.backend = b;
    o.seed = 3;
    const PolynomialSolve s = solve_polynomial_system(make_sum_system(4), 4, 0.05, o);
    EXPECT_EQ(s.result.assignment, 0b1111U);
    EXPECT_TRUE(s.result.verified);
    EXPECT_EQ(s.result.samples.size(), 4U * 7U);
  }
}

TEST(Recovery, SupportSizesAreUniform) {
  // Chi-square over support sizes 1..h at the 1% level.
  const int h = 4;
  RecoveryOptions o;
  o.backend = RecoveryBackend::kOracle;
  const RecoveryPlan plan = prepare_recovery(make_sum_system(h), h, o);
  std::mt19937_64 rng(2024);
  std::vector<int> counts(h + 1, 0);
  int total = 0;
  while (total < 10000) {
    for (Monomial s : recover_assignment(plan, make_sum_system(h), 0.05, rng).samples) {
      ++counts[static_cast<std::size_t>(std::popcount(s))];
      ++total;
    }
  }
  EXPECT_EQ(counts[0], 0);
  double chi2 = 0.0;
  for (int i = 1; i <= h; ++i) {
    const double e = static_cast<double>(total) / h;
    chi2 += (counts[static_cast<std::size_t>(i)] - e) * (counts[static_cast<std::size_t>(i)] - e) / e;
  }
  EXPECT_LT(chi2, 11.345);  // df = 3
}

TEST(Recovery, FailureRateWithinBudget) {
  const MisInstance inst = make_planted_mis(8, 3, 0.3, 11);
  const PolynomialSystem f = mis_encode(inst);
  RecoveryOptions o;
  o.backend = RecoveryBackend::kOracle;
  const RecoveryPlan plan = prepare_recovery(f, 3, o);
  std::mt19937_64 rng(99);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const RecoveryResult r = recover_assignment(plan, f, 0.05, rng);
    if (!r.verified || r.assignment != inst.planted) ++failures;
  }
  EXPECT_LE(failures, 50);
}

TEST(Recovery, AmbiguousSystemFailsVerification) {
  PolynomialSystem f;
  f.num_vars = 2;
  f.polynomials = {{{1.0, x(1)}, {1.0, x(2)}, {-1.0, 0}}};
  RecoveryOptions o;
  o.backend = RecoveryBackend::kOracle;
  try {
    solve_polynomial_system(f, 1, 0.05, o);
    FAIL() << "expected VerificationError";
  } catch (const VerificationError& e) {
    EXPECT_FALSE(e.result().verified);
    EXPECT_EQ(e.result().assignment, x(1) | x(2));
    EXPECT_FALSE(e.result().samples.empty());
  }
}

TEST(Recovery, AnyWeightWrapper) {
  RecoveryOptions o;
  o.backend = RecoveryBackend::kOracle;
  const auto s = solve_polynomial_system_any_weight(make_sum_system(3), 0.05, o);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->result.assignment, 0b111U);

  PolynomialSystem none;
  none.num_vars = 2;
  none.polynomials = {{{1.0, x(1)}, {1.0, x(2)}, {-3.0, 0}}};
  EXPECT_FALSE(solve_polynomial_system_any_weight(none, 0.05, o));
}

}  // namespace
}  // namespace qlswalk
