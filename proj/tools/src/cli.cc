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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "io.h"
#include "qlswalk/instances.h"
#include "qlswalk/macaulay.h"
#include "qlswalk/mis.h"
#include "qlswalk/qpe_sim.h"
#include "qlswalk/qsvt_kernel.h"
#include "qlswalk/system_model.h"
#include "qlswalk/walk.h"
#include "report.h"

namespace qlswalk::cli {

unsigned sweep_threads() {
  if (const char* env = std::getenv("QLS_WALK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

struct Config {
  std::string matrix;
  std::string vector;
  std::string system;
  std::string graph;
  std::string out;
  std::string edges_out;
  std::string backend = "walk";
  double solve_epsilon = 0.1;
  double poly_epsilon = 0.05;
  double delta_fail = 0.05;
  double edge_probability = 0.3;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  int h = 0;
  int n = 0;
  int seeds = 1;
  int identity = 0;
  int welded = 0;
  bool prune = true;
  int verbosity = 0;
};

// Runs body(i) for i in [0, count) on up to sweep_threads() workers. Each
// index writes only its own result slot, so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(sweep_threads(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

void note(const Config& cfg, std::ostream& err, const std::string& msg) {
  if (cfg.verbosity > 0) err << "qlswalk: " << msg << '\n';
}

AugmentedSystem load_system(const Config& cfg) {
  return build_augmented(read_matrix_file(cfg.matrix), read_vector_file(cfg.vector));
}

QlsRun oracle_run(const AugmentedSystem& sys, double epsilon, std::uint64_t seed) {
  const InstanceMetrics m = compute_metrics(sys);
  QlsRun run;
  run.backend = "oracle";
  run.epsilon = epsilon;
  run.seed = seed;
  run.gamma = m.gamma;
  run.null_overlap = m.null_overlap();
  run.y_norm_sq = m.y_norm_sq;
  run.et = m.et;
  run.sparsity = sys.sparsity;
  run.kappa_a = m.kappa_a;
  run.kappa_h = m.kappa_h;
  run.exact_state = m.y / m.y.norm();
  run.output_state = run.exact_state;
  run.phase_zero_probability = 1.0;
  run.measurement_success_probability = 1.0;
  run.round_success_probability = 1.0;
  return run;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const Config& cfg, std::ostream& out, std::ostream& err) {
  const AugmentedSystem sys = load_system(cfg);
  note(cfg, err, "loaded " + std::to_string(sys.rows()) + "x" + std::to_string(sys.cols()) +
                     " system");
  Json j = header("solve");
  j["matrix"] = cfg.matrix;
  j["vector"] = cfg.vector;
  QlsRun run;
  int code = kExitOk;
  try {
    switch (parse_recovery_backend(cfg.backend)) {
      case RecoveryBackend::kWalk: {
        QlsOptions opts;
        opts.epsilon = cfg.solve_epsilon;
        opts.seed = cfg.seed;
        run = run_qls(sys, opts);
        break;
      }
      case RecoveryBackend::kKernel:
        run = run_kernel_qls(sys, cfg.solve_epsilon, cfg.seed);
        break;
      case RecoveryBackend::kOracle:
        run = oracle_run(sys, cfg.solve_epsilon, cfg.seed);
        break;
    }
  } catch (const RepetitionCapError& e) {
    err << "error: " << e.what() << '\n';
    run = e.run();
    code = kExitRepetitionCap;
  }
  j["status"] = code == kExitOk ? "ok" : "repetition_cap_exceeded";
  j.update(qls_run_json(run));
  write_report(j, cfg.out, out);
  return code;
}

// -------------------------------------------------------------- metrics

int cmd_metrics(const Config& cfg, std::ostream& out, std::ostream&) {
  const AugmentedSystem sys = load_system(cfg);
  const InstanceMetrics m = compute_metrics(sys);
  const DecompositionReport dec = verify_vector_decomposition(sys, m);
  const ConditionRelation rel = condition_number_relation(sys, true, 1e-6);
  Json j = header("metrics");
  j["matrix"] = cfg.matrix;
  j["vector"] = cfg.vector;
  j.update(metrics_json(sys, m));
  j["decomposition_residual"] = dec.max_residual();
  j["condition_relation"] = {
      {"kappa_A", rel.kappa_a},
      {"kappa_H", rel.kappa_h},
      {"in_bounds", rel.in_bounds},
  };
  write_report(j, cfg.out, out);
  return kExitOk;
}

// --------------------------------------------------------------- welded

struct WeldedRow {
  int depth = 0;
  std::uint64_t seed = 0;
  int vertices = 0;
  int edges = 0;
  double resistance = 0.0;
  double resistance_computed = 0.0;
  double potential_error = 0.0;
  double potential_norm_sq = 0.0;
  double potential_norm_sq_computed = 0.0;
  double et = 0.0;
  int sparsity = 0;
  double kappa_b = 0.0;
  double kappa_h = 0.0;
};

WeldedRow welded_row(int depth, std::uint64_t seed) {
  const WeldedTree tree = make_welded_tree(depth, seed);
  const WeldedTreeGroundTruth truth = welded_tree_ground_truth(tree);
  const AugmentedSystem sys = welded_tree_system(tree);
  const InstanceMetrics m = compute_metrics(sys);
  WeldedRow r;
  r.depth = depth;
  r.seed = seed;
  r.vertices = tree.num_vertices;
  r.edges = static_cast<int>(tree.edges.size());
  r.resistance = truth.resistance;
  r.resistance_computed = m.y_norm_sq;
  r.potential_error = (m.p - truth.potentials).lpNorm<Eigen::Infinity>();
  r.potential_norm_sq = truth.potential_norm_sq;
  r.potential_norm_sq_computed = m.p.squaredNorm();
  r.et = m.et;
  r.sparsity = sys.sparsity;
  r.kappa_b = m.kappa_a;
  r.kappa_h = m.kappa_h;
  return r;
}

int cmd_welded(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2 || cfg.n > 7) throw NumericsError("--n must lie in [2, 7]");
  if (cfg.seeds < 1) throw NumericsError("--seeds must be positive");
  const int depths = cfg.n - 1;
  std::vector<WeldedRow> rows(static_cast<std::size_t>(depths * cfg.seeds));
  note(cfg, err, "sweeping " + std::to_string(rows.size()) + " welded trees");
  parallel_for(rows.size(), [&](std::size_t i) {
    const int depth = 2 + static_cast<int>(i) % depths;
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i) / depths;
    rows[i] = welded_row(depth, seed);
  });

  if (!cfg.edges_out.empty()) {
    std::ofstream f(cfg.edges_out);
    if (!f) throw std::runtime_error("cannot write edge list to " + cfg.edges_out);
    write_edge_list(f, make_welded_tree(cfg.n, cfg.seed));
  }

  const WeldedRow& main = rows[static_cast<std::size_t>(depths - 1)];
  Json j = header("welded");
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["seeds"] = cfg.seeds;
  j["vertices"] = main.vertices;
  j["edges"] = main.edges;
  j["resistance"] = main.resistance;
  j["resistance_computed"] = main.resistance_computed;
  j["resistance_error"] = std::abs(main.resistance - main.resistance_computed);
  j["potentials"] = {
      {"max_error", main.potential_error},
      {"norm_sq", main.potential_norm_sq},
      {"norm_sq_computed", main.potential_norm_sq_computed},
  };
  j["ET"] = main.et;
  j["s"] = main.sparsity;
  j["kappa_B"] = main.kappa_b;
  j["kappa_H"] = main.kappa_h;

  Json table = Json::array();
  bool increasing = true;
  double max_et = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const WeldedRow& r = rows[i];
    Json row;
    row["n"] = r.depth;
    row["seed"] = r.seed;
    row["kappa_B"] = r.kappa_b;
    if (r.depth > 2) {
      const double ratio = r.kappa_b / rows[i - 1].kappa_b;
      row["kappa_ratio"] = ratio;
      increasing = increasing && ratio > 1.0;
    } else {
      row["kappa_ratio"] = nullptr;
    }
    row["ET"] = r.et;
    row["resistance_error"] = std::abs(r.resistance - r.resistance_computed);
    row["potential_error"] = r.potential_error;
    max_et = std::max(max_et, r.et);
    table.push_back(std::move(row));
  }
  j["kappa_table"] = std::move(table);
  j["kappa_increasing"] = increasing;
  j["max_ET"] = max_et;
  write_report(j, cfg.out, out);
  return kExitOk;
}

// ----------------------------------------------------------- poly / mis

std::pair<int, Json> solve_report(const PolynomialSystem& f, int h, const Config& cfg,
                                  std::ostream& err) {
  RecoveryOptions ro;
  ro.backend = parse_recovery_backend(cfg.backend);
  ro.epsilon = cfg.poly_epsilon;
  ro.prune = cfg.prune;
  ro.seed = cfg.seed;
  Json j;
  j["backend"] = cfg.backend;
  j["epsilon"] = cfg.poly_epsilon;
  j["delta_fail"] = cfg.delta_fail;
  j["seed"] = cfg.seed;
  j["prune"] = cfg.prune;
  j["rounds"] = recovery_rounds(f.num_vars, cfg.delta_fail);

  PolynomialSolve solve;
  try {
    if (h > 0) {
      solve = solve_polynomial_system(f, h, cfg.delta_fail, ro);
    } else {
      std::optional<PolynomialSolve> any = solve_polynomial_system_any_weight(f, cfg.delta_fail, ro);
      if (!any) {
        const std::string msg = "no Hamming weight in [1, n] gave a verified assignment";
        err << "error: " << msg << '\n';
        j["h"] = nullptr;
        j["verified"] = false;
        j["error"] = msg;
        return {kExitVerification, j};
      }
      solve = std::move(*any);
    }
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    j["h"] = h;
    j.update(recovery_json(e.result(), f.num_vars));
    j["error"] = e.what();
    return {kExitVerification, j};
  }

  j["h"] = solve.weight;
  j.update(recovery_json(solve.result, f.num_vars));
  const MacaulaySystem& ms = solve.plan.macaulay;
  j["macaulay"] = {
      {"rows", ms.a.rows()},
      {"cols", ms.a.cols()},
      {"vanishing", ms.vanishing.size()},
  };
  if (solve.plan.run) {
    const QlsRun& run = *solve.plan.run;
    j["ET_direct"] = run.et;
    j["kappa_AD"] = run.kappa_a;
    j["qls"] = {
        {"trace_distance", run.trace_distance},
        {"repetitions", run.rounds},
        {"delta", run.delta},
    };
  } else {
    const InstanceMetrics m = compute_metrics(solve.plan.weighted);
    j["ET_direct"] = m.et;
    j["kappa_AD"] = m.kappa_a;
  }
  return {kExitOk, j};
}

int cmd_poly(const Config& cfg, std::ostream& out, std::ostream& err) {
  const PolynomialSystem f = read_polynomial_file(cfg.system);
  f.validate();
  if (cfg.h < 0 || cfg.h > f.num_vars) throw NumericsError("--h must lie in [1, n]");
  note(cfg, err, "solving " + std::to_string(f.polynomials.size()) + " polynomials in " +
                     std::to_string(f.num_vars) + " variables");
  Json j = header("poly");
  j["system"] = cfg.system;
  j["num_vars"] = f.num_vars;
  j["num_polynomials"] = f.polynomials.size();
  auto [code, body] = solve_report(f, cfg.h, cfg, err);
  j.update(body);
  write_report(j, cfg.out, out);
  return code;
}

int cmd_mis(const Config& cfg, std::ostream& out, std::ostream& err) {
  MisInstance inst;
  if (!cfg.graph.empty()) {
    Graph g = read_graph_file(cfg.graph);
    if (cfg.h < 1 || cfg.h > g.num_vertices) throw NumericsError("--h must lie in [1, n]");
    const IndependentSetCounts counts = count_independent_sets(g);
    if (counts.max_size == cfg.h && counts.max_count == 1) {
      Monomial best = 0;
      for (Monomial s : enumerate_independent_sets(g)) {
        if (std::popcount(s) == cfg.h) best = s;
      }
      inst = make_mis_instance(std::move(g), best);
    } else {
      inst.graph = std::move(g);
      inst.planted_size = cfg.h;
    }
  } else {
    if (cfg.n < 1) throw NumericsError("mis needs --graph or --n");
    if (cfg.h < 1 || cfg.h > cfg.n) throw NumericsError("--h must lie in [1, n]");
    inst = make_planted_mis(cfg.n, cfg.h, cfg.edge_probability, cfg.seed);
  }
  const int n = inst.graph.num_vertices;
  Json j = header("mis");
  if (!cfg.graph.empty()) j["graph"] = cfg.graph;
  j["n"] = n;
  j["graph_edges"] = inst.graph.edges.size();
  j["unique_maximum"] = inst.unique;
  j["planted"] = inst.unique ? Json(assignment_string(inst.planted, n)) : Json(nullptr);
  if (inst.unique) {
    const MisEtPrediction pred = predicted_et_mis(inst, cfg.h);
    j["ET_predicted"] = pred.predicted;
    j["ET_budget"] = pred.budget;
    j["count_ratio"] = pred.count_ratio;
  } else {
    j["ET_predicted"] = nullptr;
  }
  const PolynomialSystem f = mis_encode(inst);
  auto [code, body] = solve_report(f, cfg.h, cfg, err);
  j.update(body);
  write_report(j, cfg.out, out);
  return code;
}

// --------------------------------------------------------------- verify

struct NamedSystem {
  std::string name;
  std::function<AugmentedSystem()> build;
};

Json check(const std::string& name, double value, double bound) {
  return {{"name", name}, {"value", value}, {"bound", bound}, {"pass", value <= bound}};
}

Json verify_instance(const NamedSystem& inst, double tol) {
  const AugmentedSystem sys = inst.build();
  const InstanceMetrics m = compute_metrics(sys);
  Json checks = Json::array();
  checks.push_back(check("vector_decomposition",
                         verify_vector_decomposition(sys, m).max_residual(), tol));

  const WalkGraph g = build_walk_graph(sys);
  const StarStateSet st = build_star_states(g, sys);
  const WalkIdentityReport lr = verify_walk_identities(st, m);
  checks.push_back(check("initial_state_split", lr.decomposition_residual, tol));
  checks.push_back(check("walk_fixed_point", lr.fixed_point_residual, tol));
  checks.push_back(check("potential_in_row_span", lr.projection_residual, tol));
  if (st.dimension <= 1024) {
    const WalkOperator op = build_walk_operator(st);
    checks.push_back(check("dense_operator_identities",
                           verify_walk_identities(st, op, m, st.phi_b()).max_residual(), tol));
  }

  const CanonicalStates cs = canonical_states(st, m);
  const Vector leak = cs.p_b - st.apply_pi_a(cs.p_b);  // (I - Pi_A) p_B
  for (double delta : {0.01, 0.05, 0.1, 0.5}) {
    const PhaseEstimationModel model = PhaseEstimationModel::from_star_states(st, delta);
    std::ostringstream name;
    name << "spectral_gap_delta_" << delta;
    checks.push_back(check(name.str(), model.project(leak).norm(),
                           0.5 * delta * cs.p_b.norm() + tol));
  }

  const ConditionRelation rel = condition_number_relation(sys, true, 1e-6);
  checks.push_back({{"name", "condition_bracket"},
                    {"kappa_A", rel.kappa_a},
                    {"kappa_H", rel.kappa_h},
                    {"pass", rel.in_bounds}});

  bool pass = true;
  for (const Json& c : checks) pass = pass && c["pass"].get<bool>();
  Json j;
  j["name"] = inst.name;
  j["rows"] = sys.rows();
  j["cols"] = sys.cols();
  j["pass"] = pass;
  j["checks"] = std::move(checks);
  return j;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  std::vector<NamedSystem> instances;
  if (!cfg.matrix.empty()) {
    instances.push_back({cfg.matrix, [&] { return load_system(cfg); }});
  } else if (cfg.welded > 0) {
    if (cfg.welded < 2 || cfg.welded > 7) throw NumericsError("--welded must lie in [2, 7]");
    instances.push_back({"welded-" + std::to_string(cfg.welded), [&] {
                           return welded_tree_system(make_welded_tree(cfg.welded, cfg.seed));
                         }});
  } else if (cfg.identity > 0) {
    if (cfg.identity > 64) throw NumericsError("--identity must lie in [1, 64]");
    const int n = cfg.identity;
    instances.push_back({"identity-" + std::to_string(n), [n] {
                           return build_augmented(Matrix::Identity(n, n), Vector::Ones(n));
                         }});
  } else {
    if (cfg.seeds < 1) throw NumericsError("--seeds must be positive");
    for (int k = 0; k < cfg.seeds; ++k) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
      instances.push_back({"random-" + std::to_string(seed), [seed] {
                             std::mt19937_64 rng(seed);
                             const int rows = 2 + static_cast<int>(rng() % 11);
                             const int cols = 1 + static_cast<int>(rng() % std::min(8, rows));
                             return make_random_consistent(rows, cols, 0.6, seed);
                           }});
    }
  }
  note(cfg, err, "verifying " + std::to_string(instances.size()) + " instance(s)");
  std::vector<Json> results(instances.size());
  parallel_for(instances.size(),
               [&](std::size_t i) { results[i] = verify_instance(instances[i], cfg.tolerance); });

  bool all = true;
  Json list = Json::array();
  for (Json& r : results) {
    all = all && r["pass"].get<bool>();
    list.push_back(std::move(r));
  }
  Json j = header("verify");
  j["tolerance"] = cfg.tolerance;
  j["seed"] = cfg.seed;
  j["all_pass"] = all;
  j["instances"] = std::move(list);
  write_report(j, cfg.out, out);
  return all ? kExitOk : kExitVerification;
}

// ------------------------------------------------------------- plumbing

CLI::Validator open_unit_interval() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        std::istringstream is(s);
        if (!(is >> v) || !(v > 0.0 && v < 1.0)) return "value must lie in (0, 1)";
        return {};
      },
      "(0,1)");
}

void add_output(CLI::App* sub, Config& cfg) {
  sub->add_option("--out", cfg.out, "Report path (stdout when omitted)");
  sub->add_option("--seed", cfg.seed, "64-bit seed");
  sub->add_flag("-v,--verbose", cfg.verbosity, "Progress notes on stderr");
}

void add_backend(CLI::App* sub, Config& cfg) {
  sub->add_option("--backend", cfg.backend, "Solver backend")
      ->check(CLI::IsMember({"walk", "kernel", "oracle"}));
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RepetitionCapError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRepetitionCap;
  } catch (const InconsistentSystemError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Quantum-walk linear system solver simulator"};
  app.name("qlswalk");
  app.require_subcommand(1);
  // -h is left free for the Hamming weight flag.
  app.set_help_flag("--help", "Print this help message and exit");

  CLI::App* solve = app.add_subcommand("solve", "Run a QLS backend on A y = b");
  solve->add_option("--matrix", cfg.matrix, "Triplet file for A")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--vector", cfg.vector, "Value file for b")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--epsilon", cfg.solve_epsilon, "Target trace distance")
      ->check(open_unit_interval());
  add_backend(solve, cfg);
  add_output(solve, cfg);

  CLI::App* metrics = app.add_subcommand("metrics", "Instance metrics of A y = b");
  metrics->add_option("--matrix", cfg.matrix, "Triplet file for A")->required()->check(CLI::ExistingFile);
  metrics->add_option("--vector", cfg.vector, "Value file for b")->required()->check(CLI::ExistingFile);
  add_output(metrics, cfg);

  CLI::App* welded = app.add_subcommand("welded", "Welded-tree flow instance");
  welded->add_option("--n", cfg.n, "Tree depth in [2, 7]")->required();
  welded->add_option("--seeds", cfg.seeds, "Seeds per depth in the sweep table");
  welded->add_option("--edges", cfg.edges_out, "Write the edge list here");
  add_output(welded, cfg);

  CLI::App* poly = app.add_subcommand("poly", "Boolean polynomial system recovery");
  poly->add_option("--system", cfg.system, "Polynomial file")
      ->required()
      ->check(CLI::ExistingFile);
  poly->add_option("--h", cfg.h, "Hamming weight; every weight is tried when omitted");
  poly->add_option("--delta-fail", cfg.delta_fail, "Failure probability")
      ->check(open_unit_interval());
  poly->add_option("--epsilon", cfg.poly_epsilon, "QLS precision")->check(open_unit_interval());
  poly->add_flag("--prune,!--no-prune", cfg.prune, "Drop rows forced to zero");
  add_backend(poly, cfg);
  add_output(poly, cfg);

  CLI::App* mis = app.add_subcommand("mis", "Maximum independent set recovery");
  auto* graph_opt =
      mis->add_option("--graph", cfg.graph, "Graph file")->check(CLI::ExistingFile);
  mis->add_option("--n", cfg.n, "Vertices of a generated planted instance")
      ->excludes(graph_opt);
  mis->add_option("--edge-prob", cfg.edge_probability, "Edge probability when generating");
  mis->add_option("--h", cfg.h, "Independent set size")->required();
  mis->add_option("--delta-fail", cfg.delta_fail, "Failure probability")->check(open_unit_interval());
  mis->add_option("--epsilon", cfg.poly_epsilon, "QLS precision")->check(open_unit_interval());
  mis->add_flag("--prune,!--no-prune", cfg.prune, "Drop rows forced to zero");
  add_backend(mis, cfg);
  add_output(mis, cfg);

  CLI::App* verify = app.add_subcommand("verify", "Walk identity and invariant checks");
  auto* vm = verify->add_option("--matrix", cfg.matrix, "Triplet file for A")->check(CLI::ExistingFile);
  auto* vv = verify->add_option("--vector", cfg.vector, "Value file for b")->check(CLI::ExistingFile);
  vm->needs(vv);
  vv->needs(vm);
  verify->add_option("--welded", cfg.welded, "Welded tree depth")->excludes(vm);
  verify->add_option("--identity", cfg.identity, "Identity system size")->excludes(vm);
  verify->add_option("--seeds", cfg.seeds, "Random systems starting at --seed");
  verify->add_option("--tolerance", cfg.tolerance, "Residual bound");
  add_output(verify, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (!cfg.out.empty()) {
    const std::filesystem::path parent = std::filesystem::path(cfg.out).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      err << "error: output directory " << parent.string() << " does not exist\n";
      return kExitUsage;
    }
  }

  return guarded(
      [&] {
        if (*solve) return cmd_solve(cfg, out, err);
        if (*metrics) return cmd_metrics(cfg, out, err);
        if (*welded) return cmd_welded(cfg, out, err);
        if (*poly) return cmd_poly(cfg, out, err);
        if (*mis) return cmd_mis(cfg, out, err);
        return cmd_verify(cfg, out, err);
      },
      err);
}

}  // namespace qlswalk::cli
