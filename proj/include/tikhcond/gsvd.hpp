#pragma once
// Generalized SVD of the stacked pair (A, L), the shifted-inverse helper
// P y = (A'A + lambda^2 L'L)^{-1} y built on it, and the filtered Tikhonov
// solve. Factor layout: A = U diag(sigma~) R Q', L = V [diag(mu) 0] R Q' with
// sigma~ = [sigma; ones(n-p)], sigma ascending, mu descending, sigma^2+mu^2=1.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "tikhcond/core.hpp"

namespace tikhcond {

struct TikhonovProblem {
  Mat A;                 // m x n, stacked pair has full column rank
  Mat L;                 // p x n, full row rank, p <= n <= m
  Vec b;                 // m
  double lambda = 0.0;
  Mat M;                 // l x n component selector; empty means identity
  Tolerances tol;
};

struct GsvdFactors {
  Mat U;      // m x n, orthonormal columns
  Mat V;      // p x p, orthogonal
  Mat Q;      // n x n, orthogonal
  Mat R;      // n x n, upper triangular, invertible
  Vec sigma;  // length p, ascending, in [0, 1]
  Vec mu;     // length p, descending, in (0, 1]
  Index m = 0, n = 0, p = 0;
};

namespace detail {

// Columns of Z1*W with vanishing norm are not determined by the data; any
// unit vector orthogonal to the rest completes U. Canonical-vector candidates
// with two projection sweeps keep the choice deterministic.
inline void complete_orthonormal_column(Mat& U, Index col) {
  const Index m = U.rows();
  double best_norm = -1.0;
  Vec best;
  for (Index cand = 0; cand < m; ++cand) {
    Vec w = Vec::Unit(m, cand);
    for (int sweep = 0; sweep < 2; ++sweep) w -= U * (U.transpose() * w);
    const double nw = w.norm();
    if (nw > best_norm * (1.0 + 1e-12)) {
      best_norm = nw;
      best = std::move(w);
    }
  }
  if (best_norm < 1e-3)
    fail(ErrorKind::NumericalFailure, "orthonormal completion of U failed");
  U.col(col) = best / best_norm;
}

inline double max_singular_value(const Mat& A) {
  return Eigen::BDCSVD<Mat>(A).singularValues()[0];
}

}  // namespace detail

inline void validate_problem(const Mat& A, const Mat& L, const Vec& b, double lambda,
                             const Tolerances& tol = {}) {
  const Index m = A.rows(), n = A.cols(), p = L.rows();
  if (m < 1 || n < 1 || p < 1) fail(ErrorKind::BadDimension, "empty operand");
  if (L.cols() != n) fail(ErrorKind::BadDimension, "A and L must share column count");
  if (b.size() != m) fail(ErrorKind::BadDimension, "right-hand side length mismatch");
  if (!(p <= n && n <= m))
    fail(ErrorKind::BadDimension, "dimensions must satisfy p <= n <= m");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    fail(ErrorKind::InvalidArgument, "lambda must be finite and nonnegative");

  const Vec sL = Eigen::BDCSVD<Mat>(L).singularValues();
  if (sL[p - 1] <= tol.rank * sL[0])
    fail(ErrorKind::RankDeficient, "L does not have full row rank");
  Mat K(m + p, n);
  K << A, L;
  const Vec sK = Eigen::BDCSVD<Mat>(K).singularValues();
  if (sK[n - 1] <= tol.rank * sK[0])
    fail(ErrorKind::RankDeficient, "stacked pair [A; L] is column rank deficient");
}

inline void validate_problem(const TikhonovProblem& pr) {
  validate_problem(pr.A, pr.L, pr.b, pr.lambda, pr.tol);
  if (pr.M.size() > 0 && pr.M.cols() != pr.A.cols())
    fail(ErrorKind::BadDimension, "M must have as many columns as A");
}

inline GsvdFactors compute_gsvd(const Mat& A, const Mat& L, const Tolerances& tol = {}) {
  const Index m = A.rows(), n = A.cols(), p = L.rows();
  if (L.cols() != n) fail(ErrorKind::BadDimension, "A and L must share column count");
  if (!(p <= n && n <= m))
    fail(ErrorKind::BadDimension, "dimensions must satisfy p <= n <= m");

  Mat K(m + p, n);
  K << A, L;
  Eigen::HouseholderQR<Mat> qr(K);
  const Mat Z = qr.householderQ() * Mat::Identity(m + p, n);
  const Mat T = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();

  const Mat Z1 = Z.topRows(m);
  const Mat Z2 = Z.bottomRows(p);

  Eigen::BDCSVD<Mat> svd(Z2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat V = svd.matrixU();                    // p x p
  const Mat W = svd.matrixV();                    // n x n
  Vec mu = svd.singularValues();                  // p, descending
  for (Index i = 0; i < p; ++i) mu[i] = std::clamp(mu[i], 0.0, 1.0);
  if (mu[p - 1] <= tol.rank)
    fail(ErrorKind::RankDeficient, "L does not have full row rank");

  const Mat ZW = Z1 * W;
  GsvdFactors F;
  F.m = m;
  F.n = n;
  F.p = p;
  F.V = V;
  F.mu = mu;
  F.sigma.resize(p);
  F.U.resize(m, n);
  std::vector<Index> degenerate;
  for (Index i = 0; i < n; ++i) {
    const double nrm = ZW.col(i).norm();
    if (i < p) F.sigma[i] = std::min(nrm, 1.0);
    if (nrm > 1e-12) {
      F.U.col(i) = ZW.col(i) / nrm;
    } else {
      F.U.col(i).setZero();
      degenerate.push_back(i);
    }
  }
  for (Index i : degenerate) detail::complete_orthonormal_column(F.U, i);

  // RQ of X = W'T through a reversal-flipped QR: with J the anti-identity,
  // X'J = Qt Rt gives X = (J Rt' J) (Qt J)' and J Rt' J is upper triangular.
  const Mat X = W.transpose() * T;
  Eigen::HouseholderQR<Mat> rq(Mat(X.transpose().rowwise().reverse()));
  const Mat Qt = rq.householderQ() * Mat::Identity(n, n);
  const Mat Rt = rq.matrixQR().triangularView<Eigen::Upper>();
  F.R = Mat(Rt.transpose()).reverse();
  F.Q = Qt.rowwise().reverse();

  if (!F.R.diagonal().cwiseAbs().allFinite() ||
      F.R.diagonal().cwiseAbs().minCoeff() <= 0.0)
    fail(ErrorKind::RankDeficient, "stacked pair [A; L] is column rank deficient");
  return F;
}

// Diagonal of R'-side shift: d_i = sigma_i^2 + lambda^2 mu_i^2 for i < p, 1
// for the trailing block (there sigma~ = 1, mu = 0).
inline Vec shift_diagonal(const GsvdFactors& F, double lambda) {
  Vec d = Vec::Ones(F.n);
  for (Index i = 0; i < F.p; ++i) {
    d[i] = F.sigma[i] * F.sigma[i] + lambda * lambda * F.mu[i] * F.mu[i];
    if (!(d[i] > 0.0) || !std::isfinite(d[i]))
      fail(ErrorKind::SingularShift,
           "sigma_i^2 + lambda^2 mu_i^2 vanished at index " + std::to_string(i));
  }
  return d;
}

// y -> (A'A + lambda^2 L'L)^{-1} y through the factorization:
// Q R^{-1} D^{-1} R^{-T} Q' y.
inline Mat apply_P(const GsvdFactors& F, double lambda, const Mat& Y) {
  if (Y.rows() != F.n) fail(ErrorKind::BadDimension, "apply_P operand has wrong row count");
  const Vec d = shift_diagonal(F, lambda);
  Mat Wk = F.Q.transpose() * Y;
  Wk = F.R.transpose().triangularView<Eigen::Lower>().solve(Wk);
  Wk.array().colwise() /= d.array();
  Wk = F.R.triangularView<Eigen::Upper>().solve(Wk);
  return F.Q * Wk;
}

inline Vec apply_P(const GsvdFactors& F, double lambda, const Vec& y) {
  return Vec(apply_P(F, lambda, Mat(y)));
}

// Dense Cholesky route; oracle for apply_P.
inline Mat apply_P_dense(const Mat& A, const Mat& L, double lambda, const Mat& Y) {
  const Mat N = A.transpose() * A + lambda * lambda * L.transpose() * L;
  Eigen::LLT<Mat> llt(N);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::SingularShift, "normal-equation matrix is not positive definite");
  return llt.solve(Y);
}

// Generalized singular values gamma_i = sigma_i / mu_i, ascending.
inline Vec gen_singular_values(const GsvdFactors& F) {
  Vec g(F.p);
  for (Index i = 0; i < F.p; ++i) {
    if (F.mu[i] <= 0.0)
      fail(ErrorKind::RankDeficient, "zero mu entry; L is rank deficient");
    g[i] = F.sigma[i] / F.mu[i];
  }
  return g;
}

struct RegSolution {
  Vec x_lambda;  // regularized solution
  Vec r_lambda;  // residual b - A x_lambda
  Vec filters;   // length p: f_i = sigma_i^2 / (sigma_i^2 + lambda^2 mu_i^2)
};

inline RegSolution solve_with_factors(const GsvdFactors& F, const Mat& A, const Vec& b,
                                      double lambda) {
  if (b.size() != F.m) fail(ErrorKind::BadDimension, "right-hand side length mismatch");
  const Vec d = shift_diagonal(F, lambda);
  Vec c = F.U.transpose() * b;
  RegSolution sol;
  sol.filters.resize(F.p);
  for (Index i = 0; i < F.p; ++i) {
    c[i] *= F.sigma[i] / d[i];
    sol.filters[i] = F.sigma[i] * F.sigma[i] / d[i];
  }
  const Vec z = F.R.triangularView<Eigen::Upper>().solve(c);
  sol.x_lambda = F.Q * z;
  sol.r_lambda = b - A * sol.x_lambda;
  return sol;
}

inline RegSolution solve_tikhonov(const TikhonovProblem& pr) {
  validate_problem(pr);
  const GsvdFactors F = compute_gsvd(pr.A, pr.L, pr.tol);
  return solve_with_factors(F, pr.A, pr.b, pr.lambda);
}

// Reconstruction helpers for invariant checks.
inline Mat reconstruct_A(const GsvdFactors& F) {
  Vec st = Vec::Ones(F.n);
  st.head(F.p) = F.sigma;
  return F.U * st.asDiagonal() * F.R * F.Q.transpose();
}

inline Mat reconstruct_L(const GsvdFactors& F) {
  Mat D = Mat::Zero(F.p, F.n);
  D.diagonal() = F.mu;
  return F.V * D * F.R * F.Q.transpose();
}

}  // namespace tikhcond
