// Command-line front end: solve Tikhonov problems, compute or estimate
// condition numbers, run perturbation experiments, and check the bundled
// reference tables. Exit codes: 0 success, 1 input error, 2 reproduction
// failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <tikhcond/tikhcond.hpp>

namespace {

using tikhcond::Index;
using tikhcond::Json;
using tikhcond::Mat;
using tikhcond::Vec;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

tikhcond::Example load_problem(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return tikhcond::problem_from_json(tikhcond::read_json_file(spec));
  return tikhcond::gen_example(spec);
}

Mat parse_L(const std::string& spec, const tikhcond::Example& ex) {
  if (spec.empty()) return ex.L;
  if (spec == "identity") return Mat();
  if (spec == "l1") return tikhcond::gen_L1(ex.handle.n);
  const Json j = tikhcond::read_json_file(spec);
  if (j.is_array()) return tikhcond::mat_from_json(j);
  return tikhcond::regop_from_json(j, ex.handle.n);
}

Mat parse_M(const std::string& spec, Index n) {
  if (spec.empty() || spec == "identity") return Mat();
  if (spec.rfind("row:", 0) == 0) {
    const long i = std::stol(spec.substr(4));
    if (i < 0 || i >= n)
      tikhcond::fail(tikhcond::ErrorKind::InvalidArgument,
                     "row index out of range [0," + std::to_string(n) + ")");
    Mat M = Mat::Zero(1, n);
    M(0, i) = 1.0;
    return M;
  }
  return tikhcond::mat_from_json(tikhcond::read_json_file(spec));
}

// Flat key/value object in the selected encoding.
void emit_flat(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << "," << it.value().dump() << "\n";
    return;
  }
  if (format == "md") {
    std::cout << "| field | value |\n|---|---|\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << "| " << it.key() << " | " << it.value().dump() << " |\n";
    return;
  }
  std::size_t w = 0;
  for (auto it = j.begin(); it != j.end(); ++it) w = std::max(w, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it)
    std::cout << it.key() << std::string(w - it.key().size() + 2, ' ')
              << it.value().dump() << "\n";
}

void emit_table_report(const tikhcond::TableReport& rep, const std::string& format,
                       bool pins) {
  if (pins) {
    // Ready-to-paste frozen pins for cells that are compared against this
    // library's own measurements.
    for (const tikhcond::CellResult& c : rep.cells) {
      if (c.status == tikhcond::CellStatus::KnownDeviation ||
          c.status == tikhcond::CellStatus::CoarseLambda ||
          c.status == tikhcond::CellStatus::FpLimited)
        std::cout << "      {\"" << rep.table << "\", \"" << c.row << "\", " << c.col
                  << ", " << fmt17(c.computed) << "},\n";
    }
    return;
  }
  if (format == "json") {
    std::cout << tikhcond::table_report_json(rep).dump(2) << "\n";
    return;
  }
  const char* sep = (format == "csv") ? "," : "  ";
  if (format == "csv")
    std::cout << "row,column,status,reference,computed,rel_dev,pass\n";
  else if (format == "md")
    std::cout << "| row | column | status | reference | computed | rel_dev | pass "
                 "|\n|---|---|---|---|---|---|---|\n";
  for (const tikhcond::CellResult& c : rep.cells) {
    if (format == "md") std::cout << "| ";
    const char* msep = (format == "md") ? " | " : sep;
    std::printf("%-18s%s%-9s%s%-15s%s%-13.6g%s%-13.6g%s%-10.3g%s%s%s\n",
                c.row.c_str(), msep, c.column.c_str(), msep,
                to_string(c.status), msep, c.reference, msep, c.computed, msep,
                c.rel_dev, msep, c.pass ? "pass" : "FAIL",
                (format == "md") ? " |" : "");
  }
  std::cout << "table " << rep.table << ": " << (rep.pass ? "PASS" : "FAIL") << " ("
            << rep.cells.size() - static_cast<std::size_t>(rep.failed) << "/"
            << rep.cells.size() << " cells)\n";
}

struct CondArgs {
  std::string method;
  std::string problem = "toeplitz5";
  std::string structure = "auto";
  std::string M = "identity";
  std::string L;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  int k = 3;
  std::uint64_t seed = 0;
  int threads = 1;
  int restarts = 1;
  std::string wallis = "approx";
};

int run_cond(const CondArgs& a, const std::string& format) {
  tikhcond::Example ex = load_problem(a.problem);
  ex.L = parse_L(a.L, ex);
  const double lambda = std::isnan(a.lambda) ? ex.default_lambda : a.lambda;
  tikhcond::TikhonovProblem pr = tikhcond::to_problem(ex, lambda);
  pr.M = parse_M(a.M, ex.handle.n);

  const tikhcond::StructuredMatrixHandle* hp = &ex.handle;
  tikhcond::StructuredMatrixHandle reparam;
  if (a.structure == "none") {
    hp = nullptr;
  } else if (a.structure != "auto") {
    const tikhcond::StructureKind kind = tikhcond::structure_kind_from_string(a.structure);
    if (kind != ex.handle.kind) {
      const Vec params = tikhcond::params_from_dense(kind, pr.A, pr.tol);
      reparam = tikhcond::make_handle(kind, pr.A.rows(), pr.A.cols(), params);
      hp = &reparam;
    }
  }

  tikhcond::validate_problem(pr);
  const tikhcond::GsvdFactors F = tikhcond::compute_gsvd(pr.A, pr.L, pr.tol);
  const tikhcond::RegSolution sol = tikhcond::solve_with_factors(F, pr.A, pr.b, pr.lambda);

  if (a.method == "sce") {
    tikhcond::SceOpts opts;
    opts.k = a.k;
    opts.seed = a.seed;
    opts.threads = a.threads;
    opts.wallis_mode = (a.wallis == "exact") ? tikhcond::WallisMode::Exact
                                             : tikhcond::WallisMode::Approximate;
    const tikhcond::SceReport rep = tikhcond::sce_structured(pr, F, sol, hp, opts);
    emit_flat(tikhcond::sce_report_json(rep), format);
    return 0;
  }

  const tikhcond::FrechetOperator op =
      hp ? tikhcond::make_frechet(pr, F, sol, *hp)
         : tikhcond::frechet_unstructured(pr, F, sol);
  const Vec data = hp ? tikhcond::data_vector(*hp, pr.b)
                      : tikhcond::data_vector_unstructured(pr.A, pr.b);
  const Vec Mx = pr.M.size() == 0 ? sol.x_lambda : Vec(pr.M * sol.x_lambda);

  tikhcond::ConditionTriple t;
  if (a.method == "exact") {
    t = (pr.M.rows() == 1)
            ? tikhcond::cond_single_component(pr, F, sol, hp)
            : tikhcond::cond_exact(pr, F, sol, hp);
  } else {
    tikhcond::PowerOpts opts;
    opts.seed = a.seed;
    opts.restarts = a.restarts;
    t.normwise = tikhcond::estimate_normwise_power(op, data, Mx, opts).estimate;
    t.mixed = tikhcond::estimate_mixed_power(op, data, Mx, opts).estimate;
    t.componentwise =
        tikhcond::estimate_componentwise_power(op, data, Mx, opts).estimate;
    t.structure = hp ? tikhcond::structure_tag_of(hp->kind)
                     : tikhcond::StructureTag::Unstructured;
    t.method = tikhcond::Method::Power;
  }
  emit_flat(tikhcond::condition_report_json(t), format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tikhonov regularization: solutions and structured condition numbers"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --format appear after the subcommand
  std::string format = "human";
  app.add_option("--format", format, "Output encoding")
      ->check(CLI::IsMember({"human", "json", "csv", "md"}));

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a Tikhonov problem");
  std::string solve_problem = "toeplitz5";
  std::string solve_L;
  double solve_lambda = std::numeric_limits<double>::quiet_NaN();
  solve->add_option("--problem", solve_problem, "Example id or problem .json file");
  solve->add_option("--lambda", solve_lambda, "Regularization parameter");
  solve->add_option("--L", solve_L, "Regularization operator: identity|l1|file.json");

  // cond
  auto* cond = app.add_subcommand("cond", "Condition numbers of the solution");
  CondArgs ca;
  cond->add_option("method", ca.method, "exact|power|sce")
      ->required()
      ->check(CLI::IsMember({"exact", "power", "sce"}));
  cond->add_option("--problem", ca.problem, "Example id or problem .json file");
  cond->add_option("--structure", ca.structure,
                   "auto|symtoeplitz|toeplitz|hankel|vandermonde|cauchy|none")
      ->check(CLI::IsMember({"auto", "symtoeplitz", "toeplitz", "hankel",
                             "vandermonde", "cauchy", "none"}));
  cond->add_option("--M", ca.M, "identity|row:<i>|file.json (0-based row index)");
  cond->add_option("--L", ca.L, "identity|l1|file.json");
  cond->add_option("--lambda", ca.lambda, "Regularization parameter");
  cond->add_option("--k", ca.k, "Sample count for sce");
  cond->add_option("--seed", ca.seed, "RNG seed");
  cond->add_option("--threads", ca.threads, "Worker threads for sce");
  cond->add_option("--restarts", ca.restarts, "Power-iteration restarts");
  cond->add_option("--wallis", ca.wallis, "Wallis factor mode for sce")
      ->check(CLI::IsMember({"approx", "exact"}));

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Check the bundled reference tables");
  std::string table;
  bool pins = false;
  repro->add_option("--table", table, "toep|hankel|vand|cauchy|power")
      ->required()
      ->check(CLI::IsMember({"toep", "hankel", "vand", "cauchy", "power"}));
  repro->add_flag("--pins", pins, "Print frozen-pin rows for measured cells");

  // experiment
  auto* expcmd = app.add_subcommand("experiment", "Perturb, re-solve, and report ratios");
  std::string spec_path;
  std::uint64_t exp_seed = 0;
  bool exp_seed_set = false;
  expcmd->add_option("--spec", spec_path, "Experiment spec .json")->required();
  expcmd->add_option("--seed", exp_seed, "Override the spec seed")
      ->each([&](const std::string&) { exp_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      tikhcond::Example ex = load_problem(solve_problem);
      ex.L = parse_L(solve_L, ex);
      const double lambda = std::isnan(solve_lambda) ? ex.default_lambda : solve_lambda;
      tikhcond::TikhonovProblem pr = tikhcond::to_problem(ex, lambda);
      tikhcond::validate_problem(pr);
      const tikhcond::GsvdFactors F = tikhcond::compute_gsvd(pr.A, pr.L, pr.tol);
      const tikhcond::RegSolution sol =
          tikhcond::solve_with_factors(F, pr.A, pr.b, pr.lambda);
      Json j;
      j["lambda"] = tikhcond::json_number(lambda);
      j["x"] = tikhcond::to_json(sol.x_lambda);
      j["residual_norm"] = tikhcond::json_number(sol.r_lambda.norm());
      j["filters"] = tikhcond::to_json(sol.filters);
      emit_flat(j, format);
      return 0;
    }
    if (cond->parsed()) return run_cond(ca, format);
    if (repro->parsed()) {
      const tikhcond::TableReport rep = tikhcond::reproduce_table(table);
      emit_table_report(rep, format, pins);
      return rep.pass ? 0 : 2;
    }
    if (expcmd->parsed()) {
      tikhcond::ExperimentSpec spec =
          tikhcond::experiment_spec_from_json(tikhcond::read_json_file(spec_path));
      if (exp_seed_set) spec.seed = exp_seed;
      const tikhcond::RatioReport rep = tikhcond::perturb_and_measure(spec);
      emit_flat(tikhcond::ratio_report_json(rep), format);
      return 0;
    }
  } catch (const tikhcond::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
