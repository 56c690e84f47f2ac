// Minimal solver walkthrough: assemble a bundled example, factor the pair
// (A, L), and print the regularized solution with its filter factors.

#include <cstdio>

#include <tikhcond/tikhcond.hpp>

int main() {
  using namespace tikhcond;

  const Example ex = gen_example("toeplitz5");
  TikhonovProblem pr = to_problem(ex, ex.default_lambda);
  validate_problem(pr);

  const GsvdFactors F = compute_gsvd(pr.A, pr.L, pr.tol);
  const RegSolution sol = solve_with_factors(F, pr.A, pr.b, pr.lambda);

  std::printf("problem %s, lambda = %.6g\n", ex.id.c_str(), pr.lambda);
  for (Index i = 0; i < sol.x_lambda.size(); ++i)
    std::printf("  x[%td] = % .10e   filter = %.6f\n",
                static_cast<std::ptrdiff_t>(i), sol.x_lambda[i], sol.filters[i]);
  std::printf("residual norm = %.6e\n", sol.r_lambda.norm());
  return 0;
}
