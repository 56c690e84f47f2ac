#pragma once
// Structured matrix classes: parameter maps g(a), canonical bases for the
// linear classes, derived matrices for the nonlinear classes, and first-order
// direction rules shared by the estimators.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tikhcond/core.hpp"

namespace tikhcond {

enum class StructureKind { GeneralLinear, SymToeplitz, Toeplitz, Hankel, Vandermonde, Cauchy };

inline const char* to_string(StructureKind k) {
  switch (k) {
    case StructureKind::GeneralLinear: return "general";
    case StructureKind::SymToeplitz: return "symtoeplitz";
    case StructureKind::Toeplitz: return "toeplitz";
    case StructureKind::Hankel: return "hankel";
    case StructureKind::Vandermonde: return "vandermonde";
    case StructureKind::Cauchy: return "cauchy";
  }
  return "unknown";
}

inline StructureKind structure_kind_from_string(const std::string& s) {
  if (s == "general") return StructureKind::GeneralLinear;
  if (s == "symtoeplitz") return StructureKind::SymToeplitz;
  if (s == "toeplitz") return StructureKind::Toeplitz;
  if (s == "hankel") return StructureKind::Hankel;
  if (s == "vandermonde") return StructureKind::Vandermonde;
  if (s == "cauchy") return StructureKind::Cauchy;
  fail(ErrorKind::InvalidArgument, "unknown structure kind '" + s + "'");
}

inline bool is_linear_structure(StructureKind k) {
  return k == StructureKind::GeneralLinear || k == StructureKind::SymToeplitz ||
         k == StructureKind::Toeplitz || k == StructureKind::Hankel;
}

// Parameter count fixed by the class. GeneralLinear takes the basis size.
inline Index param_count(StructureKind kind, Index m, Index n, Index general_k = -1) {
  switch (kind) {
    case StructureKind::SymToeplitz: return n;
    case StructureKind::Toeplitz: return m + n - 1;
    case StructureKind::Hankel: return m + n - 1;
    case StructureKind::Vandermonde: return n;
    case StructureKind::Cauchy: return m + n;
    case StructureKind::GeneralLinear:
      if (general_k < 1) fail(ErrorKind::InvalidArgument, "GeneralLinear needs a basis size");
      return general_k;
  }
  fail(ErrorKind::InvalidArgument, "bad structure kind");
}

struct LinearBasis {
  std::vector<Mat> matrices;  // k dense m x n matrices, fixed ordering
  Index size() const { return static_cast<Index>(matrices.size()); }
};

// A structured matrix is (kind, dims, params). Cauchy stores params as [u; v].
// GeneralLinear additionally carries its user basis; canonical kinds derive
// theirs on demand.
struct StructuredMatrixHandle {
  StructureKind kind = StructureKind::GeneralLinear;
  Index m = 0, n = 0;
  Vec params;
  LinearBasis basis;  // GeneralLinear only
};

namespace detail {

// Cauchy nodes must be separated or entries blow up quadratically.
inline void check_cauchy_separation(const Vec& u, const Vec& v) {
  double scale = 1.0;
  if (u.size()) scale = std::max(scale, u.cwiseAbs().maxCoeff());
  if (v.size()) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  const double floor = 1e-12 * (1.0 + scale);
  for (Index i = 0; i < u.size(); ++i)
    for (Index j = 0; j < v.size(); ++j)
      if (std::abs(u[i] - v[j]) <= floor)
        fail(ErrorKind::DegenerateStructure,
             "Cauchy nodes u[" + std::to_string(i) + "] and v[" + std::to_string(j) +
                 "] are not separated");
}

// Toeplitz parameter order: first column (offsets 0..m-1), then the first row
// excluding the shared corner (offsets -1..-(n-1)).
inline Index toeplitz_param_index(Index m, Index d /* i - j */) {
  return d >= 0 ? d : m - 1 - d;
}

}  // namespace detail

inline void validate_handle(const StructuredMatrixHandle& h) {
  if (h.m < 1 || h.n < 1) fail(ErrorKind::BadDimension, "empty matrix dims");
  if (h.kind == StructureKind::SymToeplitz && h.m != h.n)
    fail(ErrorKind::InvalidArgument, "SymToeplitz requires a square matrix");
  const Index k = param_count(h.kind, h.m, h.n,
                              h.kind == StructureKind::GeneralLinear ? h.basis.size() : -1);
  if (h.params.size() != k)
    fail(ErrorKind::InvalidArgument,
         "parameter vector has length " + std::to_string(h.params.size()) + ", expected " +
             std::to_string(k));
  if (h.kind == StructureKind::GeneralLinear) {
    for (const Mat& S : h.basis.matrices)
      if (S.rows() != h.m || S.cols() != h.n)
        fail(ErrorKind::InvalidArgument, "basis matrix dims do not match handle dims");
  }
  if (h.kind == StructureKind::Cauchy)
    detail::check_cauchy_separation(h.params.head(h.m), h.params.tail(h.n));
}

inline StructuredMatrixHandle make_handle(StructureKind kind, Index m, Index n, Vec params) {
  StructuredMatrixHandle h{kind, m, n, std::move(params), {}};
  validate_handle(h);
  return h;
}

inline StructuredMatrixHandle make_cauchy_handle(const Vec& u, const Vec& v) {
  Vec p(u.size() + v.size());
  p << u, v;
  return make_handle(StructureKind::Cauchy, u.size(), v.size(), std::move(p));
}

inline StructuredMatrixHandle make_general_linear(Index m, Index n, LinearBasis basis,
                                                  Vec params) {
  StructuredMatrixHandle h{StructureKind::GeneralLinear, m, n, std::move(params),
                           std::move(basis)};
  validate_handle(h);
  return h;
}

// g: params -> dense matrix. Vandermonde rows carry zero-based exponents
// (0^0 = 1, so a zero node yields a leading 1). Entries are built by repeated
// multiplication, not pow().
inline Mat materialize(const StructuredMatrixHandle& h) {
  validate_handle(h);
  Mat A(h.m, h.n);
  switch (h.kind) {
    case StructureKind::SymToeplitz:
      for (Index i = 0; i < h.m; ++i)
        for (Index j = 0; j < h.n; ++j) A(i, j) = h.params[std::abs(i - j)];
      return A;
    case StructureKind::Toeplitz:
      for (Index i = 0; i < h.m; ++i)
        for (Index j = 0; j < h.n; ++j)
          A(i, j) = h.params[detail::toeplitz_param_index(h.m, i - j)];
      return A;
    case StructureKind::Hankel:
      for (Index i = 0; i < h.m; ++i)
        for (Index j = 0; j < h.n; ++j) A(i, j) = h.params[i + j];
      return A;
    case StructureKind::Vandermonde:
      for (Index j = 0; j < h.n; ++j) {
        double v = 1.0;
        for (Index i = 0; i < h.m; ++i) {
          A(i, j) = v;
          v *= h.params[j];
        }
      }
      return A;
    case StructureKind::Cauchy: {
      const Vec u = h.params.head(h.m), v = h.params.tail(h.n);
      for (Index i = 0; i < h.m; ++i)
        for (Index j = 0; j < h.n; ++j) A(i, j) = 1.0 / (u[i] - v[j]);
      return A;
    }
    case StructureKind::GeneralLinear: {
      A.setZero();
      for (Index i = 0; i < h.basis.size(); ++i) A += h.params[i] * h.basis.matrices[i];
      return A;
    }
  }
  fail(ErrorKind::InvalidArgument, "bad structure kind");
}

// Canonical indicator bases. Ordering is part of the contract: SymToeplitz by
// first-column index; Toeplitz and Hankel by first-column indices then the
// remaining boundary-row indices.
inline LinearBasis canonical_basis(StructureKind kind, Index m, Index n) {
  if (!is_linear_structure(kind) || kind == StructureKind::GeneralLinear)
    fail(ErrorKind::UnsupportedForNonlinear,
         std::string("no canonical basis for kind '") + to_string(kind) + "'");
  LinearBasis basis;
  const Index k = param_count(kind, m, n);
  basis.matrices.reserve(static_cast<size_t>(k));
  for (Index t = 0; t < k; ++t) {
    Mat S = Mat::Zero(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) {
        const bool hit = (kind == StructureKind::SymToeplitz && std::abs(i - j) == t) ||
                         (kind == StructureKind::Toeplitz &&
                          detail::toeplitz_param_index(m, i - j) == t) ||
                         (kind == StructureKind::Hankel && i + j == t);
        if (hit) S(i, j) = 1.0;
      }
    basis.matrices.push_back(std::move(S));
  }
  return basis;
}

namespace detail {

inline void check_in_class(const StructuredMatrixHandle& h, const Mat& A, double tol) {
  const double denom = std::max(1.0, A.norm());
  const double res = (materialize(h) - A).norm();
  if (res > tol * denom)
    fail(ErrorKind::NotInClass, std::string("matrix is not ") + to_string(h.kind) +
                                    " within tolerance (residual " + std::to_string(res) + ")");
}

}  // namespace detail

// Inverse of g up to the class's own ambiguity. Linear kinds and Vandermonde
// read parameters off matrix entries and round-trip exactly; Cauchy is only
// determined up to a common node shift, fixed here by v[0] = 0.
inline Vec params_from_dense(StructureKind kind, const Mat& A, const Tolerances& tol = {}) {
  const Index m = A.rows(), n = A.cols();
  if (m < 1 || n < 1) fail(ErrorKind::BadDimension, "empty matrix");
  Vec a;
  switch (kind) {
    case StructureKind::SymToeplitz:
      a = A.col(0);
      break;
    case StructureKind::Toeplitz:
      a.resize(m + n - 1);
      a.head(m) = A.col(0);
      for (Index j = 1; j < n; ++j) a[m - 1 + j] = A(0, j);
      break;
    case StructureKind::Hankel:
      a.resize(m + n - 1);
      a.head(m) = A.col(0);
      for (Index j = 1; j < n; ++j) a[m - 1 + j] = A(m - 1, j);
      break;
    case StructureKind::Vandermonde:
      if (m < 2)
        fail(ErrorKind::NotInClass, "cannot recover Vandermonde nodes from a single row");
      a = A.row(1).transpose();
      break;
    case StructureKind::Cauchy: {
      a.resize(m + n);
      for (Index i = 0; i < m; ++i) {
        if (std::abs(A(i, 0)) < kZeroFloor)
          fail(ErrorKind::NotInClass, "Cauchy matrices have no zero entries");
        a[i] = 1.0 / A(i, 0);  // gauge v[0] = 0
      }
      a[m] = 0.0;
      for (Index j = 1; j < n; ++j) {
        if (std::abs(A(0, j)) < kZeroFloor)
          fail(ErrorKind::NotInClass, "Cauchy matrices have no zero entries");
        a[m + j] = a[0] - 1.0 / A(0, j);
      }
      break;
    }
    case StructureKind::GeneralLinear:
      fail(ErrorKind::InvalidArgument,
           "GeneralLinear recovery needs a basis; use params_from_dense(basis, A)");
  }
  StructuredMatrixHandle h{kind, m, n, a, {}};
  detail::check_in_class(h, A, tol.struct_fit);
  return a;
}

// Least-squares fit of A onto an explicit basis, with a membership check.
inline Vec params_from_dense(const LinearBasis& basis, const Mat& A,
                             const Tolerances& tol = {}) {
  const Index k = basis.size();
  if (k < 1) fail(ErrorKind::InvalidArgument, "empty basis");
  const Index m = A.rows(), n = A.cols();
  Mat B(m * n, k);
  for (Index i = 0; i < k; ++i) {
    if (basis.matrices[i].rows() != m || basis.matrices[i].cols() != n)
      fail(ErrorKind::InvalidArgument, "basis matrix dims do not match A");
    B.col(i) = Eigen::Map<const Vec>(basis.matrices[i].data(), m * n);
  }
  const Vec a = B.colPivHouseholderQr().solve(Eigen::Map<const Vec>(A.data(), m * n));
  Mat fit = Mat::Zero(m, n);
  for (Index i = 0; i < k; ++i) fit += a[i] * basis.matrices[i];
  if ((fit - A).norm() > tol.struct_fit * std::max(1.0, A.norm()))
    fail(ErrorKind::NotInClass, "matrix does not lie in the span of the basis");
  return a;
}

// Row i of the derived matrix is i * V(i-1, :); differentiates node powers.
inline Mat vdm_derived_v1(const Mat& V) {
  Mat V1 = Mat::Zero(V.rows(), V.cols());
  for (Index i = 1; i < V.rows(); ++i) V1.row(i) = static_cast<double>(i) * V.row(i - 1);
  return V1;
}

// Entry (i, j) = 1 / (u_i - v_j)^2.
inline Mat cauchy_derived_c1(const Vec& u, const Vec& v) {
  detail::check_cauchy_separation(u, v);
  Mat C1(u.size(), v.size());
  for (Index i = 0; i < u.size(); ++i)
    for (Index j = 0; j < v.size(); ++j) {
      const double d = u[i] - v[j];
      C1(i, j) = 1.0 / (d * d);
    }
  return C1;
}

// First-order matrix direction for a parameter direction e:
//   linear classes: sum_i e_i S_i (placed entrywise, no basis materialization)
//   Vandermonde:    V1 * Diag(e)
//   Cauchy:         C1 * Diag(e_v) - Diag(e_u) * C1
inline Mat direction_matrix(const StructuredMatrixHandle& h, const Vec& e) {
  const Index k = param_count(h.kind, h.m, h.n,
                              h.kind == StructureKind::GeneralLinear ? h.basis.size() : -1);
  if (e.size() != k) fail(ErrorKind::InvalidArgument, "direction length mismatch");
  switch (h.kind) {
    case StructureKind::SymToeplitz:
    case StructureKind::Toeplitz:
    case StructureKind::Hankel: {
      StructuredMatrixHandle d{h.kind, h.m, h.n, e, {}};
      return materialize(d);
    }
    case StructureKind::GeneralLinear: {
      Mat E = Mat::Zero(h.m, h.n);
      for (Index i = 0; i < k; ++i) E += e[i] * h.basis.matrices[i];
      return E;
    }
    case StructureKind::Vandermonde:
      return vdm_derived_v1(materialize(h)) * e.asDiagonal();
    case StructureKind::Cauchy: {
      const Mat C1 = cauchy_derived_c1(h.params.head(h.m), h.params.tail(h.n));
      return C1 * e.tail(h.n).asDiagonal() - e.head(h.m).asDiagonal() * C1;
    }
  }
  fail(ErrorKind::InvalidArgument, "bad structure kind");
}

// Basis accessor used by the condition-number routines: explicit for
// GeneralLinear, canonical otherwise.
inline LinearBasis basis_of(const StructuredMatrixHandle& h) {
  if (h.kind == StructureKind::GeneralLinear) return h.basis;
  return canonical_basis(h.kind, h.m, h.n);
}

}  // namespace tikhcond
