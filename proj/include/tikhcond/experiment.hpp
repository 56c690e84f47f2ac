#pragma once
// Perturbation experiments: draw relative perturbations of the structure
// parameters (or of every matrix entry) and of b, re-solve at the same
// lambda, and compare the measured errors against the condition estimates
// through over-estimation ratios.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "tikhcond/cond_exact.hpp"
#include "tikhcond/cond_power.hpp"
#include "tikhcond/cond_sce.hpp"
#include "tikhcond/core.hpp"
#include "tikhcond/frechet.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/rng.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

struct ExperimentSpec {
  StructuredMatrixHandle handle;
  Vec b;
  Mat L;                     // empty means identity
  Mat M;                     // empty means identity
  double lambda = 0.0;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  bool structured = true;    // perturb params (true) or every entry of A
  Method estimator = Method::Sce;
  SceOpts sce;
  PowerOpts power;
};

struct RatioReport {
  double r_kappa = std::numeric_limits<double>::quiet_NaN();
  double r_m = std::numeric_limits<double>::quiet_NaN();
  double r_c = std::numeric_limits<double>::quiet_NaN();
  double err_norm = 0.0;  // ||M dx||_2 / ||M x||_2
  double err_mixed = 0.0; // ||M dx||_inf / ||M x||_inf
  double err_comp = 0.0;  // || M dx ./ M x ||_inf over defined components
  double est_kappa = 0.0, est_m = 0.0, est_c = 0.0;
  bool undefined = false;  // epsilon == 0 or a vanishing true error
};

namespace detail {

inline constexpr std::uint64_t kSaltPerturbParams = 11;
inline constexpr std::uint64_t kSaltPerturbRhs = 12;
inline constexpr std::uint64_t kSaltPerturbEntries = 13;

inline Vec project_M(const Mat& M, const Vec& x) {
  return M.size() == 0 ? x : Vec(M * x);
}

}  // namespace detail

inline RatioReport perturb_and_measure(const ExperimentSpec& spec) {
  if (!(spec.epsilon >= 0.0))
    fail(ErrorKind::InvalidArgument, "epsilon must be nonnegative");
  TikhonovProblem pr;
  pr.A = materialize(spec.handle);
  const Index m = spec.handle.m, n = spec.handle.n;
  pr.L = spec.L.size() > 0 ? spec.L : Mat(Mat::Identity(n, n));
  pr.b = spec.b;
  pr.lambda = spec.lambda;
  pr.M = spec.M;
  validate_problem(pr);
  const GsvdFactors F = compute_gsvd(pr.A, pr.L, pr.tol);
  const RegSolution sol = solve_with_factors(F, pr.A, pr.b, pr.lambda);

  // Perturbed data: relative, uniform in (-1, 1), scaled by epsilon.
  TikhonovProblem qr = pr;
  StructuredMatrixHandle hp = spec.handle;
  if (spec.structured) {
    GaussianStream gs(substream_seed(spec.seed, detail::kSaltPerturbParams));
    const Vec s = uniform_sym_vec(gs, hp.params.size());
    hp.params.array() *= (1.0 + spec.epsilon * s.array());
    qr.A = materialize(hp);
  } else {
    GaussianStream ge(substream_seed(spec.seed, detail::kSaltPerturbEntries));
    Mat E(m, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) E(i, j) = ge.uniform_sym();
    qr.A = pr.A.array() * (1.0 + spec.epsilon * E.array());
  }
  GaussianStream gf(substream_seed(spec.seed, detail::kSaltPerturbRhs));
  const Vec f = uniform_sym_vec(gf, m);
  qr.b = pr.b.array() * (1.0 + spec.epsilon * f.array());

  RegSolution psol;
  try {
    validate_problem(qr);
    const GsvdFactors Fp = compute_gsvd(qr.A, qr.L, qr.tol);
    psol = solve_with_factors(Fp, qr.A, qr.b, qr.lambda);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RankDeficient)
      fail(ErrorKind::PerturbedRankDeficient,
           std::string("perturbed problem lost rank: ") + e.what());
    throw;
  }

  RatioReport rep;
  const Vec Mx = detail::project_M(pr.M, sol.x_lambda);
  const Vec Mdx = detail::project_M(pr.M, Vec(psol.x_lambda - sol.x_lambda));
  rep.err_norm = Mdx.norm() / detail::mx_norm2_checked(Mx);
  rep.err_mixed = Mdx.cwiseAbs().maxCoeff() / detail::mx_norminf_checked(Mx);
  const CompwiseMax cw = compwise_max(Mdx, Mx);
  rep.err_comp = cw.value;

  const StructuredMatrixHandle* hptr = spec.structured ? &spec.handle : nullptr;
  switch (spec.estimator) {
    case Method::Exact: {
      const ConditionTriple t = cond_exact(pr, F, sol, hptr);
      rep.est_kappa = t.normwise;
      rep.est_m = t.mixed;
      rep.est_c = t.componentwise;
      break;
    }
    case Method::Power: {
      const FrechetOperator op =
          hptr ? make_frechet(pr, F, sol, *hptr) : frechet_unstructured(pr, F, sol);
      const Vec data =
          hptr ? data_vector(*hptr, pr.b) : data_vector_unstructured(pr.A, pr.b);
      rep.est_kappa = estimate_normwise_power(op, data, Mx, spec.power).estimate;
      rep.est_m = estimate_mixed_power(op, data, Mx, spec.power).estimate;
      rep.est_c = estimate_componentwise_power(op, data, Mx, spec.power).estimate;
      break;
    }
    case Method::Sce: {
      SceOpts so = spec.sce;
      so.seed = substream_seed(spec.seed, 99);  // estimator stream, not the
                                                // perturbation stream
      const SceReport r = sce_structured(pr, F, sol, hptr, so);
      rep.est_kappa = r.kappa_sce;
      rep.est_m = r.m_sce;
      rep.est_c = r.c_sce;
      break;
    }
  }

  const bool errs_alive = spec.epsilon > 0.0 && rep.err_norm > 0.0 &&
                          rep.err_mixed > 0.0 && rep.err_comp > 0.0 &&
                          std::isfinite(rep.err_comp);
  if (!errs_alive) {
    rep.undefined = true;
    return rep;
  }
  rep.r_kappa = rep.est_kappa * spec.epsilon / rep.err_norm;
  rep.r_m = rep.est_m * spec.epsilon / rep.err_mixed;
  rep.r_c = rep.est_c * spec.epsilon / rep.err_comp;
  return rep;
}

}  // namespace tikhcond
