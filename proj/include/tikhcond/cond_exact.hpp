#pragma once
// Exact condition numbers of the map (structure params, b) -> M x_lambda:
// normwise, mixed, and componentwise, for the unstructured class, linear
// structure classes, Vandermonde, and Cauchy, plus the one-adjoint fast path
// when M is a single row and a finite-difference oracle for tests.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tikhcond/core.hpp"
#include "tikhcond/frechet.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/rng.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

enum class StructureTag {
  Unstructured,
  GeneralLinear,
  SymToeplitz,
  Toeplitz,
  Hankel,
  Vandermonde,
  Cauchy
};

inline const char* to_string(StructureTag t) {
  switch (t) {
    case StructureTag::Unstructured: return "unstructured";
    case StructureTag::GeneralLinear: return "general";
    case StructureTag::SymToeplitz: return "symtoeplitz";
    case StructureTag::Toeplitz: return "toeplitz";
    case StructureTag::Hankel: return "hankel";
    case StructureTag::Vandermonde: return "vandermonde";
    case StructureTag::Cauchy: return "cauchy";
  }
  return "unknown";
}

inline StructureTag structure_tag_of(StructureKind k) {
  switch (k) {
    case StructureKind::GeneralLinear: return StructureTag::GeneralLinear;
    case StructureKind::SymToeplitz: return StructureTag::SymToeplitz;
    case StructureKind::Toeplitz: return StructureTag::Toeplitz;
    case StructureKind::Hankel: return StructureTag::Hankel;
    case StructureKind::Vandermonde: return StructureTag::Vandermonde;
    case StructureKind::Cauchy: return StructureTag::Cauchy;
  }
  return StructureTag::Unstructured;
}

enum class Method { Exact, Power, Sce };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Power: return "power";
    case Method::Sce: return "sce";
  }
  return "unknown";
}

struct ConditionTriple {
  double normwise = std::numeric_limits<double>::quiet_NaN();
  double mixed = std::numeric_limits<double>::quiet_NaN();
  double componentwise = std::numeric_limits<double>::quiet_NaN();  // NaN when undefined
  std::vector<Index> undefined_components;
  StructureTag structure = StructureTag::Unstructured;
  Method method = Method::Exact;
};

struct CompwiseMax {
  double value = 0.0;  // NaN when any component is undefined
  std::vector<Index> undefined;
};

// max_j num_j / |den_j| with the zero conventions: both below the floor
// contributes nothing, numerator alive over a dead denominator is undefined.
inline CompwiseMax compwise_max(const Vec& num, const Vec& den) {
  if (num.size() != den.size())
    fail(ErrorKind::BadDimension, "componentwise ratio needs equal lengths");
  CompwiseMax out;
  for (Index j = 0; j < num.size(); ++j) {
    const double nj = std::abs(num[j]), dj = std::abs(den[j]);
    if (dj < kZeroFloor) {
      if (nj < kZeroFloor) continue;
      out.undefined.push_back(j);
    } else {
      out.value = std::max(out.value, nj / dj);
    }
  }
  if (!out.undefined.empty()) out.value = std::numeric_limits<double>::quiet_NaN();
  return out;
}

// Concatenated data vector whose entries are the perturbed quantities:
// [params; b] for a structure class, [vec(A); b] otherwise.
inline Vec data_vector(const StructuredMatrixHandle& h, const Vec& b) {
  Vec d(h.params.size() + b.size());
  d << h.params, b;
  return d;
}

inline Vec data_vector_unstructured(const Mat& A, const Vec& b) {
  Vec d(A.size() + b.size());
  d << Eigen::Map<const Vec>(A.data(), A.size()), b;
  return d;
}

namespace detail {

struct CondWork {
  Mat MP;  // l x n: M P
  Mat D;   // l x m: M P A' (the db block of the Jacobian)
  Vec Mx;  // l
};

inline CondWork make_cond_work(const TikhonovProblem& pr, const GsvdFactors& F,
                               const RegSolution& sol) {
  const Index n = pr.A.cols();
  if (pr.M.size() > 0 && pr.M.cols() != n)
    fail(ErrorKind::BadDimension, "M must have as many columns as A");
  CondWork w;
  const Mat Mt = pr.M.size() == 0 ? Mat(Mat::Identity(n, n)) : Mat(pr.M.transpose());
  const Mat G = apply_P(F, pr.lambda, Mt);
  w.MP = G.transpose();
  w.D = (pr.A * G).transpose();
  w.Mx = pr.M.size() == 0 ? sol.x_lambda : Vec(pr.M * sol.x_lambda);
  return w;
}

inline double mx_norm2_checked(const Vec& Mx) {
  const double d = Mx.norm();
  if (d < kZeroFloor) fail(ErrorKind::ZeroDenominator, "M x_lambda is zero");
  return d;
}

inline double mx_norminf_checked(const Vec& Mx) {
  const double d = Mx.cwiseAbs().maxCoeff();
  if (d < kZeroFloor) fail(ErrorKind::ZeroDenominator, "M x_lambda is zero");
  return d;
}

inline ConditionTriple assemble_triple(const Mat& jac, const Vec& num, const Vec& Mx,
                                       double data_norm2, StructureTag tag) {
  ConditionTriple t;
  t.structure = tag;
  t.method = Method::Exact;
  const double smax = Eigen::BDCSVD<Mat>(jac).singularValues()[0];
  t.normwise = smax * data_norm2 / mx_norm2_checked(Mx);
  t.mixed = num.cwiseAbs().maxCoeff() / mx_norminf_checked(Mx);
  const CompwiseMax cw = compwise_max(num, Mx);
  t.componentwise = cw.value;
  t.undefined_components = cw.undefined;
  return t;
}

}  // namespace detail

// Linear structure classes: per-parameter Jacobian columns from the basis.
inline ConditionTriple cond_structured_linear(const TikhonovProblem& pr,
                                              const GsvdFactors& F, const RegSolution& sol,
                                              const StructuredMatrixHandle& h) {
  if (!is_linear_structure(h.kind))
    fail(ErrorKind::UnsupportedForNonlinear,
         "cond_structured_linear requires a linear structure class");
  detail::check_handle_matches(h, pr);
  const detail::CondWork w = detail::make_cond_work(pr, F, sol);
  const LinearBasis basis = basis_of(h);
  const Index k = basis.size(), l = w.Mx.size(), m = pr.A.rows();

  Mat jac(l, k + m);
  Vec num = Vec::Zero(l);
  for (Index t = 0; t < k; ++t) {
    const Mat& S = basis.matrices[t];
    const Vec col = w.MP * Vec(S.transpose() * sol.r_lambda -
                               pr.A.transpose() * (S * sol.x_lambda));
    jac.col(t) = col;
    num += std::abs(h.params[t]) * col.cwiseAbs();
  }
  jac.rightCols(m) = w.D;
  num += w.D.cwiseAbs() * pr.b.cwiseAbs();

  const Vec data = data_vector(h, pr.b);
  return detail::assemble_triple(jac, num, w.Mx, data.norm(), structure_tag_of(h.kind));
}

// Unstructured perturbations of every entry of A and b. The mixed and
// componentwise numbers never form the full Jacobian; the normwise number
// needs its largest singular value, so the l x (mn + m) matrix is assembled
// and a size cap keeps that dense step bounded.
inline ConditionTriple cond_unstructured(const TikhonovProblem& pr, const GsvdFactors& F,
                                         const RegSolution& sol) {
  const detail::CondWork w = detail::make_cond_work(pr, F, sol);
  const Index m = pr.A.rows(), n = pr.A.cols(), l = w.Mx.size();

  Vec num = Vec::Zero(l);
  for (Index j = 0; j < n; ++j) {
    const Mat Bj = w.MP.col(j) * sol.r_lambda.transpose() - sol.x_lambda[j] * w.D;
    num += Bj.cwiseAbs() * pr.A.col(j).cwiseAbs();
  }
  num += w.D.cwiseAbs() * pr.b.cwiseAbs();

  const double cells = static_cast<double>(l) * (static_cast<double>(m) * n + m);
  if (cells > 5e7)
    fail(ErrorKind::SizeCap,
         "exact unstructured normwise Jacobian would need " + std::to_string(cells) +
             " entries; use the power or SCE estimators");
  Mat jac(l, m * n + m);
  for (Index j = 0; j < n; ++j)
    jac.middleCols(j * m, m) =
        w.MP.col(j) * sol.r_lambda.transpose() - sol.x_lambda[j] * w.D;
  jac.rightCols(m) = w.D;

  const double data_norm = std::sqrt(pr.A.squaredNorm() + pr.b.squaredNorm());
  ConditionTriple t =
      detail::assemble_triple(jac, num, w.Mx, data_norm, StructureTag::Unstructured);
  return t;
}

// Vandermonde nodes: param block MP (Diag(y) - V'V1 Diag(x)), y = V1'r.
inline ConditionTriple cond_vandermonde(const TikhonovProblem& pr, const GsvdFactors& F,
                                        const RegSolution& sol,
                                        const StructuredMatrixHandle& h) {
  if (h.kind != StructureKind::Vandermonde)
    fail(ErrorKind::InvalidArgument, "handle is not Vandermonde");
  detail::check_handle_matches(h, pr);
  const detail::CondWork w = detail::make_cond_work(pr, F, sol);
  const Index m = pr.A.rows(), n = pr.A.cols();

  const Mat V1 = vdm_derived_v1(pr.A);
  const Vec y = V1.transpose() * sol.r_lambda;
  Mat Ba = -pr.A.transpose() * V1 * sol.x_lambda.asDiagonal();
  Ba += Mat(y.asDiagonal());
  const Mat param_block = w.MP * Ba;

  Mat jac(w.Mx.size(), n + m);
  jac.leftCols(n) = param_block;
  jac.rightCols(m) = w.D;
  const Vec num = param_block.cwiseAbs() * h.params.cwiseAbs() +
                  w.D.cwiseAbs() * pr.b.cwiseAbs();

  const Vec data = data_vector(h, pr.b);
  return detail::assemble_triple(jac, num, w.Mx, data.norm(), StructureTag::Vandermonde);
}

// Cauchy nodes u, v: param blocks MP C_u and MP C_v with
// C_u = A' Diag(z1) - C1' Diag(r), C_v = Diag(z2) - A' C1 Diag(x).
inline ConditionTriple cond_cauchy(const TikhonovProblem& pr, const GsvdFactors& F,
                                   const RegSolution& sol,
                                   const StructuredMatrixHandle& h) {
  if (h.kind != StructureKind::Cauchy)
    fail(ErrorKind::InvalidArgument, "handle is not Cauchy");
  detail::check_handle_matches(h, pr);
  const detail::CondWork w = detail::make_cond_work(pr, F, sol);
  const Index m = pr.A.rows(), n = pr.A.cols();

  const Mat C1 = cauchy_derived_c1(h.params.head(m), h.params.tail(n));
  const Vec z1 = C1 * sol.x_lambda;
  const Vec z2 = C1.transpose() * sol.r_lambda;
  Mat Cu = pr.A.transpose() * z1.asDiagonal();
  Cu -= C1.transpose() * sol.r_lambda.asDiagonal();
  Mat Cv = Mat(z2.asDiagonal());
  Cv -= pr.A.transpose() * C1 * sol.x_lambda.asDiagonal();
  const Mat bu = w.MP * Cu;
  const Mat bv = w.MP * Cv;

  Mat jac(w.Mx.size(), m + n + m);
  jac.leftCols(m) = bu;
  jac.middleCols(m, n) = bv;
  jac.rightCols(m) = w.D;
  const Vec num = bu.cwiseAbs() * h.params.head(m).cwiseAbs() +
                  bv.cwiseAbs() * h.params.tail(n).cwiseAbs() +
                  w.D.cwiseAbs() * pr.b.cwiseAbs();

  const Vec data = data_vector(h, pr.b);
  return detail::assemble_triple(jac, num, w.Mx, data.norm(), StructureTag::Cauchy);
}

// Structure-dispatching exact condition numbers; null handle = unstructured.
inline ConditionTriple cond_exact(const TikhonovProblem& pr, const GsvdFactors& F,
                                  const RegSolution& sol,
                                  const StructuredMatrixHandle* h = nullptr) {
  if (h == nullptr) return cond_unstructured(pr, F, sol);
  switch (h->kind) {
    case StructureKind::Vandermonde: return cond_vandermonde(pr, F, sol, *h);
    case StructureKind::Cauchy: return cond_cauchy(pr, F, sol, *h);
    default: return cond_structured_linear(pr, F, sol, *h);
  }
}

// When M has a single row the Jacobian is that row; one adjoint call yields
// all three condition numbers exactly.
inline ConditionTriple cond_single_component(const FrechetOperator& op, const Vec& data,
                                             double mx, StructureTag tag) {
  if (op.l != 1)
    fail(ErrorKind::MNotSingleRow, "single-component path requires a one-row M");
  if (data.size() != op.k + op.m)
    fail(ErrorKind::BadDimension, "data vector must have length k + m");
  if (std::abs(mx) < kZeroFloor)
    fail(ErrorKind::ZeroDenominator, "M x_lambda is zero");
  const Vec row = op.adjoint(Vec::Ones(1));
  ConditionTriple t;
  t.structure = tag;
  t.method = Method::Exact;
  t.normwise = row.norm() * data.norm() / std::abs(mx);
  const double num = row.cwiseAbs().dot(data.cwiseAbs());
  t.mixed = num / std::abs(mx);
  t.componentwise = t.mixed;
  return t;
}

inline ConditionTriple cond_single_component(const TikhonovProblem& pr,
                                             const GsvdFactors& F, const RegSolution& sol,
                                             const StructuredMatrixHandle* h = nullptr) {
  if (pr.M.rows() != 1)
    fail(ErrorKind::MNotSingleRow, "single-component path requires a one-row M");
  const FrechetOperator op =
      h ? make_frechet(pr, F, sol, *h) : frechet_unstructured(pr, F, sol);
  const Vec data =
      h ? data_vector(*h, pr.b) : data_vector_unstructured(pr.A, pr.b);
  const double mx = (pr.M * sol.x_lambda)(0);
  return cond_single_component(op, data, mx,
                               h ? structure_tag_of(h->kind) : StructureTag::Unstructured);
}

// Central-difference directional derivative of u -> M x_lambda(data + t u),
// re-solving the whole problem on each side; test oracle for the Frechet
// forward action.
inline Vec fd_directional(const TikhonovProblem& pr, const StructuredMatrixHandle* h,
                          const Vec& u, double delta) {
  const Index m = pr.A.rows(), n = pr.A.cols();
  const Index k = h ? h->params.size() : m * n;
  if (u.size() != k + m) fail(ErrorKind::BadDimension, "direction length mismatch");
  auto solve_at = [&](double t) -> Vec {
    TikhonovProblem q = pr;
    if (h) {
      StructuredMatrixHandle hp = *h;
      hp.params += t * u.head(k);
      q.A = materialize(hp);
    } else {
      q.A += t * Eigen::Map<const Mat>(u.data(), m, n);
    }
    q.b += t * u.tail(m);
    const RegSolution s = solve_tikhonov(q);
    return pr.M.size() == 0 ? s.x_lambda : Vec(pr.M * s.x_lambda);
  };
  return (solve_at(delta) - solve_at(-delta)) / (2.0 * delta);
}

// Sampling oracle: maximizes the ratio definitions of the three condition
// numbers over random sign patterns of relative perturbations, re-solving the
// perturbed problem each time. Returns a certified lower bound (up to the
// first-order error in delta) on each exact value.
inline ConditionTriple fd_condition_oracle(const TikhonovProblem& pr,
                                           const StructuredMatrixHandle* h,
                                           int n_samples, double delta,
                                           std::uint64_t seed = 0) {
  if (n_samples < 1 || !(delta > 0.0))
    fail(ErrorKind::InvalidArgument, "need n_samples >= 1 and delta > 0");
  const Index m = pr.A.rows(), n = pr.A.cols();
  const Index k = h ? h->params.size() : m * n;
  const Vec data = h ? data_vector(*h, pr.b) : data_vector_unstructured(pr.A, pr.b);
  const RegSolution base = solve_tikhonov(pr);
  const Vec Mx = pr.M.size() == 0 ? base.x_lambda : Vec(pr.M * base.x_lambda);
  const double mx2 = Mx.norm(), mxinf = Mx.lpNorm<Eigen::Infinity>();

  GaussianStream g(seed);
  ConditionTriple t;
  t.normwise = t.mixed = t.componentwise = 0.0;
  t.structure = h ? structure_tag_of(h->kind) : StructureTag::Unstructured;
  for (int s = 0; s < n_samples; ++s) {
    // relative sign-pattern perturbation: d_i = +-delta * data_i
    Vec d(k + m);
    for (Index i = 0; i < d.size(); ++i)
      d[i] = (g.uniform_sym() >= 0.0 ? delta : -delta) * data[i];
    TikhonovProblem q = pr;
    if (h) {
      StructuredMatrixHandle hp = *h;
      hp.params += d.head(k);
      q.A = materialize(hp);
    } else {
      q.A += Eigen::Map<const Mat>(d.data(), m, n);
    }
    q.b += d.tail(m);
    const RegSolution ps = solve_tikhonov(q);
    const Vec dMx =
        (pr.M.size() == 0 ? ps.x_lambda : Vec(pr.M * ps.x_lambda)) - Mx;
    if (mx2 > 0.0 && d.norm() > 0.0)
      t.normwise = std::max(t.normwise,
                            (dMx.norm() / mx2) * (data.norm() / d.norm()));
    if (mxinf > 0.0)
      t.mixed = std::max(t.mixed, dMx.lpNorm<Eigen::Infinity>() / (delta * mxinf));
    for (Index j = 0; j < Mx.size(); ++j)
      if (std::abs(Mx[j]) > kZeroFloor)
        t.componentwise =
            std::max(t.componentwise, std::abs(dMx[j]) / (delta * std::abs(Mx[j])));
  }
  return t;
}

}  // namespace tikhcond
