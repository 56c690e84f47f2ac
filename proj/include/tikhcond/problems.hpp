#pragma once
// Bundled reference problems: the four worked examples of the reference
// dataset plus the parametric Toeplitz rho-problem family, and the discrete
// first-derivative regularizer L1.

#include <cmath>
#include <cstdio>
#include <string>

#include "tikhcond/core.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

struct Example {
  std::string id;
  StructuredMatrixHandle handle;
  Vec b;
  Mat L;                 // empty means identity of size n
  double default_lambda = 0.0;
};

// (n-1) x n forward-difference matrix: +1 diagonal, -1 superdiagonal.
inline Mat gen_L1(Index n) {
  if (n < 2) fail(ErrorKind::BadDimension, "L1 needs n >= 2");
  Mat L = Mat::Zero(n - 1, n);
  for (Index i = 0; i < n - 1; ++i) {
    L(i, i) = 1.0;
    L(i, i + 1) = -1.0;
  }
  return L;
}

namespace detail {

inline Example example_toeplitz5() {
  const double h = 1e-3;
  Vec a(5);
  a << 0.0, 0.0, 1.0 + h, -1.0, 1.0;
  Vec b(5);
  b << 0.0, h, 2.0 * (1.0 + h), h, 0.0;
  Example ex;
  ex.id = "toeplitz5";
  ex.handle = make_handle(StructureKind::SymToeplitz, 5, 5, a);
  ex.b = b;
  ex.default_lambda = 4.9988e-4;
  return ex;
}

inline Example example_hankel6() {
  const double h = 1e-3;
  // Parameters are the antidiagonal values: first column then the last row
  // without the shared corner.
  Vec a(11);
  a << h, 1.0, 1.0, -1.0, 0.0, 0.0, 0.0, -1.0, 1.0, 1.0, 0.0;
  Vec b(6);
  b << h, 2.0, 0.0, 0.0, 2.0, 0.0;
  Example ex;
  ex.id = "hankel6";
  ex.handle = make_handle(StructureKind::Hankel, 6, 6, a);
  ex.b = b;
  ex.default_lambda = 7.5918e-4;
  return ex;
}

inline Example example_vandermonde25x10() {
  Vec a(10);
  for (Index j = 0; j < 10; ++j) a[j] = static_cast<double>(j + 1) / 10.0;
  Vec b(25);
  for (Index i = 0; i < 25; ++i) b[i] = (i % 2 == 0) ? -1.0 : 1.0;
  Example ex;
  ex.id = "vandermonde25x10";
  ex.handle = make_handle(StructureKind::Vandermonde, 25, 10, a);
  ex.b = b;
  ex.default_lambda = 5.69;
  return ex;
}

inline Example example_cauchy10x8() {
  Vec u(10), v(8);
  for (Index i = 0; i < 10; ++i) u[i] = static_cast<double>(i + 1);
  for (Index j = 0; j < 8; ++j) v[j] = -static_cast<double>(j);  // 1 - (j+1)
  Vec b(10);
  for (Index i = 0; i < 10; ++i) b[i] = (i % 2 == 0) ? 1.0 : -1.0;
  Example ex;
  ex.id = "cauchy10x8";
  ex.handle = make_cauchy_handle(u, v);
  ex.b = b;
  ex.default_lambda = 1.72;
  return ex;
}

inline Example example_toeplitz_rho(Index m, Index n, double rho) {
  if (m < 1 || n < 1 || n > m)
    fail(ErrorKind::BadDimension, "rho-problem needs 1 <= n <= m");
  Vec a(m + n - 1);
  double pw = 1.0;
  for (Index i = 0; i < m; ++i) {
    a[i] = pw;  // first column: rho^i
    pw *= rho;
  }
  pw = rho;
  for (Index j = 1; j < n; ++j) {
    a[m - 1 + j] = pw;  // first row tail: rho^j
    pw *= rho;
  }
  Example ex;
  ex.id = "toeplitz_rho(" + std::to_string(m) + "," + std::to_string(n) + "," +
          std::to_string(rho) + ")";
  ex.handle = make_handle(StructureKind::Toeplitz, m, n, a);
  ex.b = Vec::Ones(m);
  ex.default_lambda = 2.21;
  return ex;
}

}  // namespace detail

// Valid ids: toeplitz5, hankel6, vandermonde25x10, cauchy10x8, and
// toeplitz_rho(m,n,rho) (bare toeplitz_rho means the 100 x 50, rho = 0.99999
// configuration).
inline Example gen_example(const std::string& id) {
  if (id == "toeplitz5") return detail::example_toeplitz5();
  if (id == "hankel6") return detail::example_hankel6();
  if (id == "vandermonde25x10") return detail::example_vandermonde25x10();
  if (id == "cauchy10x8") return detail::example_cauchy10x8();
  if (id == "toeplitz_rho") return detail::example_toeplitz_rho(100, 50, 0.99999);
  if (id.rfind("toeplitz_rho(", 0) == 0) {
    long m = 0, n = 0;
    double rho = 0.0;
    if (std::sscanf(id.c_str(), "toeplitz_rho(%ld,%ld,%lf)", &m, &n, &rho) == 3)
      return detail::example_toeplitz_rho(m, n, rho);
    fail(ErrorKind::UnknownExample, "malformed rho-problem id '" + id + "'");
  }
  fail(ErrorKind::UnknownExample, "unknown example id '" + id + "'");
}

// Assemble the Tikhonov problem for an example; empty L uses the identity.
inline TikhonovProblem to_problem(const Example& ex, double lambda, const Mat& M = {}) {
  TikhonovProblem pr;
  pr.A = materialize(ex.handle);
  pr.L = ex.L.size() > 0 ? ex.L
                         : Mat(Mat::Identity(ex.handle.n, ex.handle.n));
  pr.b = ex.b;
  pr.lambda = lambda;
  pr.M = M;
  return pr;
}

}  // namespace tikhcond
