// Statistical condition estimation: a handful of random directional
// derivatives against the exact values they estimate.

#include <cstdio>

#include <tikhcond/tikhcond.hpp>

int main() {
  using namespace tikhcond;

  const Example ex = gen_example("hankel6");
  TikhonovProblem pr = to_problem(ex, ex.default_lambda);
  validate_problem(pr);
  const GsvdFactors F = compute_gsvd(pr.A, pr.L, pr.tol);
  const RegSolution sol = solve_with_factors(F, pr.A, pr.b, pr.lambda);

  const ConditionTriple exact = cond_exact(pr, F, sol, &ex.handle);

  SceOpts opts;
  opts.k = 3;
  std::printf("problem %s, lambda = %.6g, k = %td samples\n", ex.id.c_str(),
              pr.lambda, static_cast<std::ptrdiff_t>(opts.k));
  std::printf("%6s %12s %12s %14s\n", "seed", "kappa_sce", "m_sce", "c_sce");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    opts.seed = seed;
    const SceReport rep = sce_structured(pr, F, sol, &ex.handle, opts);
    std::printf("%6llu %12.5g %12.5g %14.5g\n",
                static_cast<unsigned long long>(seed), rep.kappa_sce, rep.m_sce,
                rep.c_sce);
  }
  std::printf("%6s %12.5g %12.5g %14.5g\n", "exact", exact.normwise, exact.mixed,
              exact.componentwise);
  return 0;
}
