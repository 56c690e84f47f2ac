#pragma once
// Small-sample statistical condition estimation: a few orthonormalized
// Gaussian directions pushed through the Frechet forward map, scaled by a
// Wallis-factor ratio. The componentwise variant Hadamard-weights the
// directions by the data values after orthonormalization. Sampling is drawn
// sequentially and reduced sequentially, so thread count never changes the
// result.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "tikhcond/cond_exact.hpp"
#include "tikhcond/core.hpp"
#include "tikhcond/frechet.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/rng.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

enum class WallisMode { Exact, Approximate };

// omega_1 = 1, omega_2 = 2/pi, omega_p = omega_{p-2} (p-2)/(p-1); the
// approximate form sqrt(2 / (pi (p - 1/2))) is accurate to O(1/p^2).
inline double wallis(Index p, WallisMode mode = WallisMode::Approximate) {
  if (p < 1) fail(ErrorKind::InvalidArgument, "Wallis factor needs p >= 1");
  if (mode == WallisMode::Approximate)
    return std::sqrt(2.0 / (kPi * (static_cast<double>(p) - 0.5)));
  double prev2 = 1.0, prev1 = 2.0 / kPi;  // omega_1, omega_2
  if (p == 1) return prev2;
  if (p == 2) return prev1;
  for (Index q = 3; q <= p; ++q) {
    const double w = prev2 * static_cast<double>(q - 2) / static_cast<double>(q - 1);
    prev2 = prev1;
    prev1 = w;
  }
  return prev1;
}

struct SceOpts {
  Index k = 3;                                       // sample count
  std::uint64_t seed = 0;
  WallisMode wallis_mode = WallisMode::Approximate;
  int threads = 1;                                   // forward pushes only
};

struct SceReport {
  double kappa_sce = std::numeric_limits<double>::quiet_NaN();
  double m_sce = std::numeric_limits<double>::quiet_NaN();
  double c_sce = std::numeric_limits<double>::quiet_NaN();
  Vec kappa_abs;  // per-component absolute normwise estimates
  Vec c_abs;      // per-component absolute componentwise estimates
  int samples_used = 0;
  std::uint64_t seed = 0;
  Index param_dim = 0;  // dimension of the sampled sphere, k + m
  std::vector<Index> undefined_components;
};

// Directional derivative of the solution map at (A, b) along (E, f):
// M P (A'f + E'r - A'E x). Oracle-grade reference for the Frechet forward.
inline Vec directional_derivative(const TikhonovProblem& pr, const GsvdFactors& F,
                                  const RegSolution& sol, const Mat& E, const Vec& f) {
  if (E.rows() != pr.A.rows() || E.cols() != pr.A.cols())
    fail(ErrorKind::BadDimension, "direction matrix dims do not match A");
  if (f.size() != pr.b.size())
    fail(ErrorKind::BadDimension, "direction rhs length mismatch");
  const Vec rhs = pr.A.transpose() * f + E.transpose() * sol.r_lambda -
                  pr.A.transpose() * (E * sol.x_lambda);
  const Vec dx = apply_P(F, pr.lambda, rhs);
  return pr.M.size() == 0 ? dx : Vec(pr.M * dx);
}

// k orthonormal directions on the p_dim sphere: Gaussian draw, thin QR. A
// degenerate draw (dependent columns) is resampled once under a salted
// stream before giving up.
inline Mat sample_orthonormal(Index p_dim, Index k, std::uint64_t seed,
                              std::uint64_t salt = 0) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "sample count must be positive");
  if (k > p_dim)
    fail(ErrorKind::InvalidArgument,
         "sample count exceeds the parameter dimension " + std::to_string(p_dim));
  for (int attempt = 0; attempt < 2; ++attempt) {
    GaussianStream g(
        substream_seed(seed, salt + static_cast<std::uint64_t>(attempt) * 0x100000000ULL));
    const Mat Z = gaussian_mat(g, p_dim, k);
    Eigen::HouseholderQR<Mat> qr(Z);
    const Vec diag = qr.matrixQR().diagonal().head(k).cwiseAbs();
    if (diag[0] > 0.0 && diag.minCoeff() >= 1e-12 * diag[0])
      return qr.householderQ() * Mat::Identity(p_dim, k);
  }
  fail(ErrorKind::DegenerateSamples, "random directions were numerically dependent");
}

namespace detail {

inline constexpr std::uint64_t kSaltNormwise = 101;
inline constexpr std::uint64_t kSaltCompwise = 202;

// Forward pushes into per-sample slots; parallel fill, sequential reduction.
inline std::vector<Vec> push_samples(const FrechetOperator& op, const Mat& Qs,
                                     int threads) {
  const Index k = Qs.cols();
  std::vector<Vec> out(static_cast<size_t>(k));
  if (threads <= 1) {
    for (Index j = 0; j < k; ++j) out[static_cast<size_t>(j)] = op.forward(Qs.col(j));
    return out;
  }
  std::atomic<Index> next{0};
  auto worker = [&]() {
    for (Index j = next.fetch_add(1); j < k; j = next.fetch_add(1))
      out[static_cast<size_t>(j)] = op.forward(Qs.col(j));
  };
  std::vector<std::thread> pool;
  const int nt = std::min<int>(threads, static_cast<int>(k));
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

inline Vec abs_estimates(const FrechetOperator& op, const Mat& Qs, double ratio,
                         int threads) {
  const std::vector<Vec> vs = push_samples(op, Qs, threads);
  Vec acc = Vec::Zero(op.l);
  for (const Vec& v : vs) acc += v.cwiseAbs2();
  return ratio * acc.cwiseSqrt();
}

inline void check_sce_args(const FrechetOperator& op, const Vec& data, const Vec& Mx) {
  if (data.size() != op.k + op.m)
    fail(ErrorKind::BadDimension, "data vector must have length k + m");
  if (Mx.size() != op.l) fail(ErrorKind::BadDimension, "Mx must have length l");
}

}  // namespace detail

// Normwise SCE: kappa_abs_i = (omega_k / omega_p) sqrt(sum_j v_j[i]^2),
// kappa = ||kappa_abs||_2 ||data||_2 / ||M x||_2.
inline SceReport sce_normwise(const FrechetOperator& op, const Vec& data, const Vec& Mx,
                              const SceOpts& opts = {}) {
  detail::check_sce_args(op, data, Mx);
  SceReport rep;
  rep.samples_used = static_cast<int>(opts.k);
  rep.seed = opts.seed;
  rep.param_dim = op.k + op.m;
  const Mat Qs = sample_orthonormal(rep.param_dim, opts.k, opts.seed,
                                    detail::kSaltNormwise);
  const double ratio =
      wallis(opts.k, opts.wallis_mode) / wallis(rep.param_dim, opts.wallis_mode);
  rep.kappa_abs = detail::abs_estimates(op, Qs, ratio, opts.threads);
  rep.kappa_sce = rep.kappa_abs.norm() * data.norm() / detail::mx_norm2_checked(Mx);
  return rep;
}

// Componentwise SCE: directions are Hadamard-weighted by the data values
// after orthonormalization, so each estimate tracks |J| |data| row-wise.
inline SceReport sce_componentwise(const FrechetOperator& op, const Vec& data,
                                   const Vec& Mx, const SceOpts& opts = {}) {
  detail::check_sce_args(op, data, Mx);
  SceReport rep;
  rep.samples_used = static_cast<int>(opts.k);
  rep.seed = opts.seed;
  rep.param_dim = op.k + op.m;
  Mat Qs = sample_orthonormal(rep.param_dim, opts.k, opts.seed, detail::kSaltCompwise);
  Qs.array().colwise() *= data.array();
  const double ratio =
      wallis(opts.k, opts.wallis_mode) / wallis(rep.param_dim, opts.wallis_mode);
  rep.c_abs = detail::abs_estimates(op, Qs, ratio, opts.threads);
  rep.m_sce = rep.c_abs.maxCoeff() / detail::mx_norminf_checked(Mx);
  const CompwiseMax cw = compwise_max(rep.c_abs, Mx);
  rep.c_sce = cw.value;
  rep.undefined_components = cw.undefined;
  return rep;
}

// Both variants on one operator; independent substreams per variant.
inline SceReport sce_condition(const FrechetOperator& op, const Vec& data, const Vec& Mx,
                               const SceOpts& opts = {}) {
  SceReport rep = sce_normwise(op, data, Mx, opts);
  const SceReport comp = sce_componentwise(op, data, Mx, opts);
  rep.m_sce = comp.m_sce;
  rep.c_sce = comp.c_sce;
  rep.c_abs = comp.c_abs;
  rep.undefined_components = comp.undefined_components;
  return rep;
}

// Structured entry point: builds the class operator and the [params; b] data
// vector. Null handle runs the unstructured variant on [vec(A); b].
inline SceReport sce_structured(const TikhonovProblem& pr, const GsvdFactors& F,
                                const RegSolution& sol, const StructuredMatrixHandle* h,
                                const SceOpts& opts = {}) {
  const FrechetOperator op =
      h ? make_frechet(pr, F, sol, *h) : frechet_unstructured(pr, F, sol);
  const Vec data = h ? data_vector(*h, pr.b) : data_vector_unstructured(pr.A, pr.b);
  const Vec Mx = pr.M.size() == 0 ? sol.x_lambda : Vec(pr.M * sol.x_lambda);
  return sce_condition(op, data, Mx, opts);
}

}  // namespace tikhcond
