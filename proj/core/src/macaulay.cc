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

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qlswalk/qsvt_kernel.h"

namespace qlswalk {

namespace {

bool graded_less(Monomial a, Monomial b) {
  const int da = std::popcount(a);
  const int db = std::popcount(b);
  return da != db ? da < db : a < b;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Every multilinear monomial that avoids the forced-zero generators, in
// graded order.
std::vector<Monomial> admissible_monomials(int n, const std::vector<Monomial>& vanishing,
                                           std::size_t cap) {
  Monomial forced_zero = 0;
  std::vector<Monomial> conflicts(n, 0);
  for (Monomial v : vanishing) {
    if (std::popcount(v) == 1) {
      forced_zero |= v;
    } else {
      const int i = std::countr_zero(v);
      const int j = std::countr_zero(v & (v - 1));
      conflicts[i] |= Monomial{1} << j;
      conflicts[j] |= Monomial{1} << i;
    }
  }
  std::vector<Monomial> out;
  std::vector<std::pair<int, Monomial>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [var, mono] = stack.back();
    stack.pop_back();
    if (var == n) {
      out.push_back(mono);
      if (out.size() > cap) {
        throw NumericsError("retained monomial count exceeds " + std::to_string(cap));
      }
      continue;
    }
    stack.emplace_back(var + 1, mono);
    const Monomial bit = Monomial{1} << var;
    if (!(forced_zero & bit) && !(conflicts[var] & mono)) {
      stack.emplace_back(var + 1, mono | bit);
    }
  }
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

}  // namespace

int degree(Monomial m) { return std::popcount(m); }

Monomial boolean_reduce(const std::vector<int>& exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw NumericsError("too many variables for a monomial");
  }
  Monomial m = 0;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 0) throw NumericsError("negative exponent");
    if (exponents[k] > 0) m |= Monomial{1} << k;
  }
  return m;
}

std::string monomial_to_string(Monomial m) {
  if (m == 0) return "1";
  std::string s;
  for (int k = 0; k < kMaxVariables; ++k) {
    if (!(m >> k & 1U)) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(k + 1);
  }
  return s;
}

void PolynomialSystem::validate() const {
  if (num_vars < 1 || num_vars > kMaxVariables) {
    throw NumericsError("variable count must lie in [1, " +
                        std::to_string(kMaxVariables) + "]");
  }
  const Monomial all = num_vars == 32 ? ~Monomial{0} : (Monomial{1} << num_vars) - 1;
  for (const Polynomial& p : polynomials) {
    for (const Term& t : p) {
      if (!std::isfinite(t.coefficient)) throw NumericsError("non-finite coefficient");
      if (std::popcount(t.monomial) > 2) throw NumericsError("polynomial degree exceeds 2");
      if (t.monomial & ~all) throw NumericsError("variable index out of range");
    }
  }
}

double PolynomialSystem::evaluate(std::size_t k, Monomial assignment) const {
  double v = 0.0;
  for (const Term& t : polynomials.at(k)) {
    if ((t.monomial & assignment) == t.monomial) v += t.coefficient;
  }
  return v;
}

bool PolynomialSystem::satisfied_by(Monomial assignment, double tolerance) const {
  for (std::size_t k = 0; k < polynomials.size(); ++k) {
    double scale = 0.0;
    for (const Term& t : polynomials[k]) scale = std::max(scale, std::abs(t.coefficient));
    if (std::abs(evaluate(k, assignment)) > tolerance * std::max(1.0, scale)) return false;
  }
  return true;
}

std::vector<Monomial> brute_force_solutions(const PolynomialSystem& f) {
  f.validate();
  std::vector<Monomial> out;
  const Monomial end = Monomial{1} << f.num_vars;
  for (Monomial s = 0; s < end; ++s) {
    if (f.satisfied_by(s)) out.push_back(s);
  }
  return out;
}

PolynomialSystem make_sum_system(int n) {
  PolynomialSystem f;
  f.num_vars = n;
  Polynomial p;
  for (int k = 0; k < n; ++k) p.push_back({1.0, Monomial{1} << k});
  p.push_back({-static_cast<double>(n), 0});
  f.polynomials.push_back(std::move(p));
  f.validate();
  return f;
}

Vector MacaulaySystem::monomial_vector(Monomial assignment) const {
  Vector y(static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    y(c) = (columns[c] & assignment) == columns[c] ? 1.0 : 0.0;
  }
  return y;
}

MacaulaySystem build_macaulay(const PolynomialSystem& f, int weight, bool prune,
                              std::size_t max_dense_entries) {
  f.validate();
  const int n = f.num_vars;
  if (weight < 1 || weight > n) throw NumericsError("weight must lie in [1, n]");
  if (!prune && n > 14) throw NumericsError("unpruned systems are limited to 14 variables");

  MacaulaySystem ms;
  ms.num_vars = n;
  ms.weight = weight;
  ms.pruned = prune;
  if (prune) {
    for (const Polynomial& p : f.polynomials) {
      Polynomial nz;
      for (const Term& t : p) {
        if (t.coefficient != 0.0) nz.push_back(t);
      }
      if (nz.size() == 1 && nz[0].monomial != 0) ms.vanishing.push_back(nz[0].monomial);
    }
    std::sort(ms.vanishing.begin(), ms.vanishing.end());
    ms.vanishing.erase(std::unique(ms.vanishing.begin(), ms.vanishing.end()),
                       ms.vanishing.end());
  }
  const std::vector<Monomial> monomials = admissible_monomials(n, ms.vanishing, 50000);
  for (Monomial m : monomials) {
    if (m == 0) continue;
    ms.column_index.emplace(m, static_cast<Index>(ms.columns.size()));
    ms.columns.push_back(m);
  }

  struct Entry {
    Index col;
    double value;
  };
  std::vector<std::vector<Entry>> row_entries;
  std::vector<double> row_rhs;
  for (Monomial m : monomials) {
    for (std::size_t k = 0; k < f.polynomials.size(); ++k) {
      std::vector<Entry> entries;
      double rhs = 0.0;
      for (const Term& t : f.polynomials[k]) {
        if (t.coefficient == 0.0) continue;
        const Monomial prod = boolean_product(m, t.monomial);
        if (prod == 0) {
          rhs -= t.coefficient;
          continue;
        }
        auto it = ms.column_index.find(prod);
        if (it == ms.column_index.end()) continue;  // forced zero
        entries.push_back({it->second, t.coefficient});
      }
      // Merge repeated columns and drop cancellations.
      std::sort(entries.begin(), entries.end(),
                [](const Entry& a, const Entry& b) { return a.col < b.col; });
      std::vector<Entry> merged;
      for (const Entry& e : entries) {
        if (!merged.empty() && merged.back().col == e.col) {
          merged.back().value += e.value;
        } else {
          merged.push_back(e);
        }
      }
      std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
      if (prune && merged.empty() && rhs == 0.0) continue;
      ms.rows.push_back({m, static_cast<int>(k)});
      row_entries.push_back(std::move(merged));
      row_rhs.push_back(rhs);
    }
  }
  const std::size_t entries = ms.rows.size() * ms.columns.size();
  if (entries > max_dense_entries) {
    std::ostringstream os;
    os << "Macaulay matrix " << ms.rows.size() << "x" << ms.columns.size()
       << " exceeds the dense size cap (" << monomials.size() << " retained monomials)";
    throw NumericsError(os.str());
  }
  ms.a = Matrix::Zero(static_cast<Index>(ms.rows.size()),
                      static_cast<Index>(ms.columns.size()));
  ms.b = Vector::Zero(static_cast<Index>(ms.rows.size()));
  for (std::size_t r = 0; r < ms.rows.size(); ++r) {
    for (const Entry& e : row_entries[r]) ms.a(static_cast<Index>(r), e.col) = e.value;
    ms.b(static_cast<Index>(r)) = row_rhs[r];
  }
  ms.rescaling.resize(static_cast<Index>(ms.columns.size()));
  for (std::size_t c = 0; c < ms.columns.size(); ++c) {
    const int d = std::popcount(ms.columns[c]);
    ms.rescaling(static_cast<Index>(c)) = d <= weight ? std::sqrt(binomial(weight, d)) : 1.0;
  }
  return ms;
}

AugmentedSystem rescale(const MacaulaySystem& ms) {
  return build_augmented(ms.a * ms.rescaling.asDiagonal(), ms.b);
}

Vector closed_form_p_sum_example(const MacaulaySystem& ms) {
  Vector p(static_cast<Index>(ms.rows.size()));
  for (std::size_t r = 0; r < ms.rows.size(); ++r) {
    p(static_cast<Index>(r)) =
        1.0 / binomial(ms.num_vars, std::popcount(ms.rows[r].multiplier));
  }
  return p;
}

const char* to_string(RecoveryBackend backend) {
  switch (backend) {
    case RecoveryBackend::kWalk:
      return "walk";
    case RecoveryBackend::kKernel:
      return "kernel";
    case RecoveryBackend::kOracle:
      return "oracle";
  }
  return "unknown";
}

RecoveryBackend parse_recovery_backend(const std::string& name) {
  if (name == "walk") return RecoveryBackend::kWalk;
  if (name == "kernel") return RecoveryBackend::kKernel;
  if (name == "oracle") return RecoveryBackend::kOracle;
  throw NumericsError("unknown backend '" + name + "'");
}

RecoveryPlan prepare_recovery(const PolynomialSystem& f, int weight,
                              const RecoveryOptions& options) {
  RecoveryPlan plan;
  plan.backend = options.backend;
  plan.macaulay = build_macaulay(f, weight, options.prune);
  plan.weighted = rescale(plan.macaulay);
  switch (options.backend) {
    case RecoveryBackend::kWalk: {
      QlsOptions qo;
      qo.epsilon = options.epsilon;
      qo.seed = options.seed;
      plan.run = run_qls(plan.weighted, qo);
      plan.state = plan.run->output_state;
      break;
    }
    case RecoveryBackend::kKernel:
      plan.run = run_kernel_qls(plan.weighted, options.epsilon, options.seed);
      plan.state = plan.run->output_state;
      break;
    case RecoveryBackend::kOracle: {
      const Vector z = min_norm_solve(plan.weighted.a, plan.weighted.b);
      plan.state = z / z.norm();
      break;
    }
  }
  plan.cumulative.resize(static_cast<std::size_t>(plan.state.size()));
  double acc = 0.0;
  for (Index k = 0; k < plan.state.size(); ++k) {
    acc += plan.state(k) * plan.state(k);
    plan.cumulative[static_cast<std::size_t>(k)] = acc;
  }
  return plan;
}

int recovery_rounds(int num_vars, double delta_fail) {
  if (!(delta_fail > 0.0 && delta_fail < 1.0)) {
    throw NumericsError("failure probability must lie in (0, 1)");
  }
  return 4 * static_cast<int>(std::ceil(std::log2(num_vars / delta_fail)));
}

RecoveryResult recover_assignment(const RecoveryPlan& plan, const PolynomialSystem& f,
                                  double delta_fail, std::mt19937_64& rng) {
  RecoveryResult res;
  const int rounds = recovery_rounds(f.num_vars, delta_fail);
  const double total = plan.cumulative.back();
  for (int r = 0; r < rounds; ++r) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(plan.cumulative.begin(), plan.cumulative.end(), u);
    if (it == plan.cumulative.end()) --it;
    const Monomial support = plan.macaulay.columns[it - plan.cumulative.begin()];
    res.samples.push_back(support);
    res.assignment |= support;
  }
  res.verified = f.satisfied_by(res.assignment);
  return res;
}

PolynomialSolve solve_polynomial_system(const PolynomialSystem& f, int weight,
                                        double delta_fail, const RecoveryOptions& options) {
  PolynomialSolve out;
  out.weight = weight;
  out.plan = prepare_recovery(f, weight, options);
  // The sampling stream is separate from the solver stream.
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  out.result = recover_assignment(out.plan, f, delta_fail, rng);
  if (!out.result.verified) {
    std::ostringstream os;
    os << "recovered assignment " << monomial_to_string(out.result.assignment)
       << " does not satisfy the system; sampled supports:";
    for (Monomial s : out.result.samples) os << ' ' << monomial_to_string(s);
    throw VerificationError(os.str(), out.result);
  }
  return out;
}

std::optional<PolynomialSolve> solve_polynomial_system_any_weight(
    const PolynomialSystem& f, double delta_fail, const RecoveryOptions& options) {
  for (int h = 1; h <= f.num_vars; ++h) {
    try {
      return solve_polynomial_system(f, h, delta_fail, options);
    } catch (const NumericsError&) {
      // Wrong weight: inconsistent system, failed run or failed verification.
    }
  }
  return std::nullopt;
}

}  // namespace qlswalk
