// Frechet operator layer: forward action against a central-difference oracle
// of the full solve, adjoint consistency, dense Jacobian agreement, error
// guards, and call counters.

#include "helpers.hpp"

using namespace th;

namespace {

const StructureKind kAllKinds[] = {StructureKind::SymToeplitz, StructureKind::Toeplitz,
                                   StructureKind::Hankel, StructureKind::GeneralLinear,
                                   StructureKind::Vandermonde, StructureKind::Cauchy};

FrechetOperator op_of(const TestProblem& tp) {
  return make_frechet(tp.pr, tp.F, tp.sol, tp.h);
}

}  // namespace

TEST_CASE("trivial operator halves rhs directions", "[frechet]") {
  const auto h = make_handle(StructureKind::SymToeplitz, 5, 5, Vec(Vec::Unit(5, 0)));
  TikhonovProblem pr;
  pr.A = materialize(h);
  pr.L = Mat::Identity(5, 5);
  GaussianStream g(2);
  pr.b = gaussian_vec(g, 5);
  pr.lambda = 1.0;
  const GsvdFactors F = compute_gsvd(pr.A, pr.L);
  const RegSolution sol = solve_with_factors(F, pr.A, pr.b, pr.lambda);
  const FrechetOperator op = make_frechet(pr, F, sol, h);

  const Vec db = gaussian_vec(g, 5);
  Vec u = Vec::Zero(10);
  u.tail(5) = db;
  CHECK(relvec(op.forward(u), Vec(0.5 * db)) <= 1e-13);

  // A = L = I and a symmetric direction E make E'r - A'Ex vanish: r = x = b/2
  Vec v = Vec::Zero(10);
  v.head(5) = gaussian_vec(g, 5);
  CHECK(op.forward(v).norm() <= 1e-13 * pr.b.norm());
}

TEST_CASE("forward action matches the finite-difference oracle",
          "[frechet][property]") {
  for (StructureKind kind : kAllKinds) {
    for (std::uint64_t seed = 1; seed <= 16; ++seed) {
      const TestProblem tp = make_test_problem(kind, seed * 7 + 1, 8, 5);
      const FrechetOperator op = op_of(tp);
      GaussianStream g(seed * 31 + 3);
      const Vec u = gaussian_vec(g, op.k + op.m);
      const Vec got = op.forward(u);
      const Vec fd = fd_directional(tp.pr, &tp.h, u, 1e-6);
      REQUIRE((got - fd).norm() <= 1e-5 * (1.0 + fd.norm()));
    }
  }
}

TEST_CASE("unstructured forward action matches the finite-difference oracle",
          "[frechet][property]") {
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const TestProblem tp =
        make_test_problem(StructureKind::Toeplitz, seed * 5 + 2, 7, 4);
    const FrechetOperator op = frechet_unstructured(tp.pr, tp.F, tp.sol);
    REQUIRE(op.k == 28);
    GaussianStream g(seed);
    const Vec u = gaussian_vec(g, op.k + op.m);
    const Vec got = op.forward(u);
    const Vec fd = fd_directional(tp.pr, nullptr, u, 1e-6);
    REQUIRE((got - fd).norm() <= 1e-5 * (1.0 + fd.norm()));
  }
}

TEST_CASE("adjoint identity <F u, h> = <u, F* h>", "[frechet][property]") {
  for (StructureKind kind : kAllKinds) {
    for (std::uint64_t seed = 1; seed <= 16; ++seed) {
      const int mrows = seed % 3 == 0 ? 2 : (seed % 3 == 1 ? 1 : 0);
      const TestProblem tp = make_test_problem(kind, seed * 11 + 5, 8, 5, mrows);
      const FrechetOperator op = op_of(tp);
      GaussianStream g(seed * 13 + 1);
      const Vec u = gaussian_vec(g, op.k + op.m);
      const Vec h = gaussian_vec(g, op.l);
      const double lhs = op.forward(u).dot(h);
      const double rhs = u.dot(op.adjoint(h));
      REQUIRE(std::abs(lhs - rhs) <=
              1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0));
    }
  }
}

TEST_CASE("dense Jacobians from forward and adjoint agree", "[frechet]") {
  for (StructureKind kind : kAllKinds) {
    const TestProblem tp = make_test_problem(kind, 42, 7, 4, 2);
    const FrechetOperator op = op_of(tp);
    const Mat Ja = dense_jacobian_adjoint(op);
    const Mat Jf = dense_jacobian_forward(op);
    CHECK((Ja - Jf).norm() <= 1e-12 * std::max(1.0, Jf.norm()));
  }
  const TestProblem tp = make_test_problem(StructureKind::Hankel, 42, 7, 4, 2);
  const FrechetOperator op = frechet_unstructured(tp.pr, tp.F, tp.sol);
  CHECK((dense_jacobian_adjoint(op) - dense_jacobian_forward(op)).norm() <=
        1e-12 * std::max(1.0, dense_jacobian_forward(op).norm()));
}

TEST_CASE("structure parameters must reproduce A", "[frechet][errors]") {
  TestProblem tp = make_test_problem(StructureKind::Toeplitz, 3, 6, 4);
  tp.pr.A(0, 0) += 1e-3;
  CHECK_THROWS_MATCHES(make_frechet(tp.pr, tp.F, tp.sol, tp.h), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::BasisMismatch;
                       }));
}

TEST_CASE("operand length guards", "[frechet][errors]") {
  const TestProblem tp = make_test_problem(StructureKind::Hankel, 4, 6, 4);
  const FrechetOperator op = op_of(tp);
  CHECK_THROWS_MATCHES(op.forward(Vec(Vec::Zero(op.k + op.m + 1))), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::BadDimension;
                       }));
  CHECK_THROWS_MATCHES(op.adjoint(Vec(Vec::Zero(op.l + 1))), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::BadDimension;
                       }));
}

TEST_CASE("handle dimensions must match A", "[frechet][errors]") {
  const TestProblem tp = make_test_problem(StructureKind::Toeplitz, 5, 6, 4);
  GaussianStream g(1);
  const auto wrong = random_handle(StructureKind::Toeplitz, g, 7, 4);
  CHECK_THROWS_MATCHES(make_frechet(tp.pr, tp.F, tp.sol, wrong), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::BadDimension;
                       }));
}

TEST_CASE("call counters track every action", "[frechet]") {
  const TestProblem tp = make_test_problem(StructureKind::Vandermonde, 6, 8, 5);
  const FrechetOperator op = op_of(tp);
  CHECK(op.forward_calls->load() == 0);
  CHECK(op.adjoint_calls->load() == 0);
  const Vec u = Vec::Ones(op.k + op.m);
  const Vec h = Vec::Ones(op.l);
  op.forward(u);
  op.forward(u);
  op.adjoint(h);
  CHECK(op.forward_calls->load() == 2);
  CHECK(op.adjoint_calls->load() == 1);
  const FrechetOperator copy = op;  // counters are shared, not duplicated
  copy.forward(u);
  CHECK(op.forward_calls->load() == 3);
}

TEST_CASE("kind dispatch rejects mismatched builders", "[frechet][errors]") {
  const TestProblem tp = make_test_problem(StructureKind::Cauchy, 8, 6, 4);
  CHECK_THROWS_AS(frechet_linear(tp.pr, tp.F, tp.sol, tp.h), Error);
  CHECK_THROWS_AS(frechet_vandermonde(tp.pr, tp.F, tp.sol, tp.h), Error);
}
