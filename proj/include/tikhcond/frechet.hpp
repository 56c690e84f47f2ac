#pragma once
// Frechet operator of the data-to-solution map (structure params, b) -> M x:
// matrix-free forward and adjoint actions with call counters, one builder per
// structure class. First-order rule throughout:
//   dx = P (A' db + E' r - A' E x),  E the matrix direction of the params.

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tikhcond/core.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

struct FrechetOperator {
  Index k = 0, m = 0, l = 0;               // params, rhs length, output rows
  std::function<Vec(const Vec&)> forward;  // R^{k+m} -> R^l
  std::function<Vec(const Vec&)> adjoint;  // R^l -> R^{k+m}
  std::shared_ptr<std::atomic<long>> forward_calls =
      std::make_shared<std::atomic<long>>(0);
  std::shared_ptr<std::atomic<long>> adjoint_calls =
      std::make_shared<std::atomic<long>>(0);
};

namespace detail {

// Data shared by both actions: the solve pieces and G = P M', AG = A G. The
// db-block of the adjoint is AG h for every structure class.
struct FrechetContext {
  Mat A;
  Vec x, r;
  Mat G, AG;
  Index l = 0;
  std::vector<Index> param_of_entry;  // linear kinds: column-major (i,j) -> t
  LinearBasis basis;                  // GeneralLinear only
  bool use_basis = false;
  Mat V1;                             // Vandermonde derived matrix
  Vec y;                              // V1' r
  Mat C1;                             // Cauchy squared-reciprocal matrix
  Vec z1, z2;                         // C1 x, C1' r
};

inline std::shared_ptr<FrechetContext> make_frechet_context(const TikhonovProblem& pr,
                                                            const GsvdFactors& F,
                                                            const RegSolution& sol) {
  const Index n = pr.A.cols();
  if (pr.M.size() > 0 && pr.M.cols() != n)
    fail(ErrorKind::BadDimension, "M must have as many columns as A");
  auto ctx = std::make_shared<FrechetContext>();
  ctx->A = pr.A;
  ctx->x = sol.x_lambda;
  ctx->r = sol.r_lambda;
  const Mat Mt = pr.M.size() == 0 ? Mat(Mat::Identity(n, n)) : Mat(pr.M.transpose());
  ctx->l = Mt.cols();
  ctx->G = apply_P(F, pr.lambda, Mt);
  ctx->AG = pr.A * ctx->G;
  return ctx;
}

inline void check_forward_arg(const FrechetOperator& op, const Vec& u) {
  if (u.size() != op.k + op.m)
    fail(ErrorKind::BadDimension, "forward operand must have length k + m = " +
                                      std::to_string(op.k + op.m));
}

inline void check_adjoint_arg(const FrechetOperator& op, const Vec& h) {
  if (h.size() != op.l)
    fail(ErrorKind::BadDimension,
         "adjoint operand must have length l = " + std::to_string(op.l));
}

inline void check_handle_matches(const StructuredMatrixHandle& h, const TikhonovProblem& pr) {
  if (h.m != pr.A.rows() || h.n != pr.A.cols())
    fail(ErrorKind::BadDimension, "structure handle dims do not match A");
  if ((materialize(h) - pr.A).norm() > pr.tol.struct_fit * std::max(1.0, pr.A.norm()))
    fail(ErrorKind::BasisMismatch, "structure parameters do not reproduce A");
}

}  // namespace detail

inline FrechetOperator frechet_linear(const TikhonovProblem& pr, const GsvdFactors& F,
                                      const RegSolution& sol,
                                      const StructuredMatrixHandle& h) {
  if (!is_linear_structure(h.kind))
    fail(ErrorKind::UnsupportedForNonlinear,
         "frechet_linear requires a linear structure class");
  detail::check_handle_matches(h, pr);
  auto ctx = detail::make_frechet_context(pr, F, sol);
  const Index m = h.m, n = h.n;
  const Index k = param_count(h.kind, m, n,
                              h.kind == StructureKind::GeneralLinear ? h.basis.size() : -1);
  if (h.kind == StructureKind::GeneralLinear) {
    ctx->use_basis = true;
    ctx->basis = h.basis;
  } else {
    ctx->param_of_entry.resize(static_cast<size_t>(m * n));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) {
        Index t = 0;
        if (h.kind == StructureKind::SymToeplitz) t = std::abs(i - j);
        else if (h.kind == StructureKind::Toeplitz) t = detail::toeplitz_param_index(m, i - j);
        else t = i + j;  // Hankel
        ctx->param_of_entry[static_cast<size_t>(j * m + i)] = t;
      }
  }

  FrechetOperator op;
  op.k = k;
  op.m = m;
  op.l = ctx->l;
  auto fc = op.forward_calls, ac = op.adjoint_calls;
  op.forward = [ctx, op, fc](const Vec& u) -> Vec {
    detail::check_forward_arg(op, u);
    ++*fc;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Vec e = u.head(op.k);
    const Vec db = u.tail(m);
    Mat E(m, n);
    if (ctx->use_basis) {
      E.setZero();
      for (Index t = 0; t < op.k; ++t) E += e[t] * ctx->basis.matrices[t];
    } else {
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i)
          E(i, j) = e[ctx->param_of_entry[static_cast<size_t>(j * m + i)]];
    }
    return ctx->G.transpose() * (E.transpose() * ctx->r) -
           ctx->AG.transpose() * (E * ctx->x) + ctx->AG.transpose() * db;
  };
  op.adjoint = [ctx, op, ac](const Vec& hv) -> Vec {
    detail::check_adjoint_arg(op, hv);
    ++*ac;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Vec g1 = ctx->G * hv;
    const Vec agh = ctx->AG * hv;
    Vec a = Vec::Zero(op.k);
    if (ctx->use_basis) {
      const Mat Wmn = ctx->r * g1.transpose() - agh * ctx->x.transpose();
      for (Index t = 0; t < op.k; ++t)
        a[t] = ctx->basis.matrices[t].cwiseProduct(Wmn).sum();
    } else {
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i)
          a[ctx->param_of_entry[static_cast<size_t>(j * m + i)]] +=
              ctx->r[i] * g1[j] - agh[i] * ctx->x[j];
    }
    Vec out(op.k + m);
    out << a, agh;
    return out;
  };
  return op;
}

inline FrechetOperator frechet_vandermonde(const TikhonovProblem& pr, const GsvdFactors& F,
                                           const RegSolution& sol,
                                           const StructuredMatrixHandle& h) {
  if (h.kind != StructureKind::Vandermonde)
    fail(ErrorKind::InvalidArgument, "handle is not Vandermonde");
  detail::check_handle_matches(h, pr);
  auto ctx = detail::make_frechet_context(pr, F, sol);
  ctx->V1 = vdm_derived_v1(pr.A);
  ctx->y = ctx->V1.transpose() * ctx->r;

  FrechetOperator op;
  op.k = h.n;
  op.m = h.m;
  op.l = ctx->l;
  auto fc = op.forward_calls, ac = op.adjoint_calls;
  op.forward = [ctx, op, fc](const Vec& u) -> Vec {
    detail::check_forward_arg(op, u);
    ++*fc;
    const Vec e = u.head(op.k);
    const Vec db = u.tail(op.m);
    return ctx->G.transpose() * Vec(e.cwiseProduct(ctx->y)) -
           ctx->AG.transpose() * (ctx->V1 * Vec(e.cwiseProduct(ctx->x))) +
           ctx->AG.transpose() * db;
  };
  op.adjoint = [ctx, op, ac](const Vec& hv) -> Vec {
    detail::check_adjoint_arg(op, hv);
    ++*ac;
    const Vec g1 = ctx->G * hv;
    const Vec agh = ctx->AG * hv;
    Vec out(op.k + op.m);
    out << Vec(ctx->y.cwiseProduct(g1) -
               ctx->x.cwiseProduct(ctx->V1.transpose() * agh)),
        agh;
    return out;
  };
  return op;
}

inline FrechetOperator frechet_cauchy(const TikhonovProblem& pr, const GsvdFactors& F,
                                      const RegSolution& sol,
                                      const StructuredMatrixHandle& h) {
  if (h.kind != StructureKind::Cauchy)
    fail(ErrorKind::InvalidArgument, "handle is not Cauchy");
  detail::check_handle_matches(h, pr);
  auto ctx = detail::make_frechet_context(pr, F, sol);
  ctx->C1 = cauchy_derived_c1(h.params.head(h.m), h.params.tail(h.n));
  ctx->z1 = ctx->C1 * ctx->x;
  ctx->z2 = ctx->C1.transpose() * ctx->r;

  FrechetOperator op;
  op.k = h.m + h.n;
  op.m = h.m;
  op.l = ctx->l;
  auto fc = op.forward_calls, ac = op.adjoint_calls;
  op.forward = [ctx, op, fc](const Vec& u) -> Vec {
    detail::check_forward_arg(op, u);
    ++*fc;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Vec eu = u.head(m);
    const Vec ev = u.segment(m, n);
    const Vec db = u.tail(m);
    // E = C1 Diag(ev) - Diag(eu) C1, the derivative of the node map
    const Vec Etr = ev.cwiseProduct(ctx->z2) -
                    ctx->C1.transpose() * Vec(eu.cwiseProduct(ctx->r));
    const Vec Ex = ctx->C1 * Vec(ev.cwiseProduct(ctx->x)) - eu.cwiseProduct(ctx->z1);
    return ctx->G.transpose() * Etr - ctx->AG.transpose() * Ex +
           ctx->AG.transpose() * db;
  };
  op.adjoint = [ctx, op, ac](const Vec& hv) -> Vec {
    detail::check_adjoint_arg(op, hv);
    ++*ac;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Vec g1 = ctx->G * hv;
    const Vec agh = ctx->AG * hv;
    Vec out(m + n + m);
    out << Vec(ctx->z1.cwiseProduct(agh) - ctx->r.cwiseProduct(ctx->C1 * g1)),
        Vec(ctx->z2.cwiseProduct(g1) -
            ctx->x.cwiseProduct(ctx->C1.transpose() * agh)),
        agh;
    return out;
  };
  return op;
}

inline FrechetOperator frechet_unstructured(const TikhonovProblem& pr, const GsvdFactors& F,
                                            const RegSolution& sol) {
  auto ctx = detail::make_frechet_context(pr, F, sol);
  const Index m = pr.A.rows(), n = pr.A.cols();

  FrechetOperator op;
  op.k = m * n;  // params are vec(A), column-major
  op.m = m;
  op.l = ctx->l;
  auto fc = op.forward_calls, ac = op.adjoint_calls;
  op.forward = [ctx, op, fc](const Vec& u) -> Vec {
    detail::check_forward_arg(op, u);
    ++*fc;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Eigen::Map<const Mat> E(u.data(), m, n);
    const Vec db = u.tail(m);
    return ctx->G.transpose() * (E.transpose() * ctx->r) -
           ctx->AG.transpose() * (E * ctx->x) + ctx->AG.transpose() * db;
  };
  op.adjoint = [ctx, op, ac](const Vec& hv) -> Vec {
    detail::check_adjoint_arg(op, hv);
    ++*ac;
    const Index m = ctx->A.rows(), n = ctx->A.cols();
    const Vec g1 = ctx->G * hv;
    const Vec agh = ctx->AG * hv;
    const Mat Wmn = ctx->r * g1.transpose() - agh * ctx->x.transpose();
    Vec out(m * n + m);
    out << Eigen::Map<const Vec>(Wmn.data(), m * n), agh;
    return out;
  };
  return op;
}

// Structure-dispatching builder for handles.
inline FrechetOperator make_frechet(const TikhonovProblem& pr, const GsvdFactors& F,
                                    const RegSolution& sol,
                                    const StructuredMatrixHandle& h) {
  switch (h.kind) {
    case StructureKind::Vandermonde: return frechet_vandermonde(pr, F, sol, h);
    case StructureKind::Cauchy: return frechet_cauchy(pr, F, sol, h);
    default: return frechet_linear(pr, F, sol, h);
  }
}

}  // namespace tikhcond
