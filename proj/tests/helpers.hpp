#pragma once
// Shared test utilities: relative errors, seeded random problems per
// structure kind, and dense Jacobian materialization from the operator.

#include <catch2/catch_amalgamated.hpp>

#include <tikhcond/tikhcond.hpp>

namespace th {

using namespace tikhcond;

inline double rel(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

inline double relvec(const Vec& got, const Vec& want) {
  return (got - want).norm() / want.norm();
}

inline StructuredMatrixHandle random_handle(StructureKind kind, GaussianStream& g,
                                            Index m, Index n) {
  switch (kind) {
    case StructureKind::SymToeplitz:
      return make_handle(kind, n, n, gaussian_vec(g, n));
    case StructureKind::Toeplitz:
    case StructureKind::Hankel:
      return make_handle(kind, m, n, gaussian_vec(g, m + n - 1));
    case StructureKind::Vandermonde: {
      Vec nodes(n);
      for (Index j = 0; j < n; ++j) nodes[j] = 0.3 + g.uniform01();
      return make_handle(kind, m, n, nodes);
    }
    case StructureKind::Cauchy: {
      Vec u(m), v(n);
      for (Index i = 0; i < m; ++i) u[i] = static_cast<double>(i + 1) + g.uniform01();
      for (Index j = 0; j < n; ++j) v[j] = -static_cast<double>(j) - g.uniform01();
      return make_cauchy_handle(u, v);
    }
    case StructureKind::GeneralLinear: {
      LinearBasis basis;
      const Index k = 3;
      for (Index t = 0; t < k; ++t) basis.matrices.push_back(gaussian_mat(g, m, n));
      return make_general_linear(m, n, std::move(basis), gaussian_vec(g, k));
    }
  }
  fail(ErrorKind::InvalidArgument, "bad kind");
}

struct TestProblem {
  StructuredMatrixHandle h;
  TikhonovProblem pr;
  GsvdFactors F;
  RegSolution sol;
};

// mrows: 0 = identity M (empty), 1 = random single row, >1 = random rows.
inline TestProblem make_test_problem(StructureKind kind, std::uint64_t seed, Index m,
                                     Index n, int mrows = 0, bool useL1 = false) {
  GaussianStream g(seed);
  TestProblem tp{random_handle(kind, g, m, n), {}, {}, {}};
  m = tp.h.m;
  n = tp.h.n;
  tp.pr.A = materialize(tp.h);
  tp.pr.L = useL1 ? gen_L1(n) : Mat(Mat::Identity(n, n));
  tp.pr.b = gaussian_vec(g, m);
  tp.pr.lambda = 0.2 + g.uniform01();
  if (mrows == 1) {
    tp.pr.M = gaussian_mat(g, 1, n);
  } else if (mrows > 1) {
    tp.pr.M = gaussian_mat(g, mrows, n);
  }
  validate_problem(tp.pr);
  tp.F = compute_gsvd(tp.pr.A, tp.pr.L, tp.pr.tol);
  tp.sol = solve_with_factors(tp.F, tp.pr.A, tp.pr.b, tp.pr.lambda);
  return tp;
}

// Dense Jacobian, one adjoint call per output component.
inline Mat dense_jacobian_adjoint(const FrechetOperator& op) {
  Mat J(op.l, op.k + op.m);
  for (Index i = 0; i < op.l; ++i) J.row(i) = op.adjoint(Vec::Unit(op.l, i)).transpose();
  return J;
}

// Dense Jacobian, one forward call per input direction.
inline Mat dense_jacobian_forward(const FrechetOperator& op) {
  Mat J(op.l, op.k + op.m);
  for (Index j = 0; j < op.k + op.m; ++j)
    J.col(j) = op.forward(Vec::Unit(op.k + op.m, j));
  return J;
}

}  // namespace th
