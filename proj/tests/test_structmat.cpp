// Structured-matrix layer: materialization, canonical bases, parameter
// recovery, derived matrices for the nonlinear kinds, and the handle
// invariants.

#include "helpers.hpp"

using namespace th;

TEST_CASE("materialize SymToeplitz matches the 5x5 example", "[structmat]") {
  Vec a(5);
  a << 0, 0, 1.001, -1, 1;
  const auto h = make_handle(StructureKind::SymToeplitz, 5, 5, a);
  const Mat A = materialize(h);
  REQUIRE(A.rows() == 5);
  CHECK(A(2, 0) == 1.001);  // |row-col| = 2 diagonal
  CHECK(A(0, 2) == 1.001);
  CHECK((A - A.transpose()).norm() == 0.0);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) CHECK(A(i, j) == a[std::abs(i - j)]);
}

TEST_CASE("materialize SymToeplitz of e1 is the identity", "[structmat]") {
  const auto h = make_handle(StructureKind::SymToeplitz, 4, 4, Vec(Vec::Unit(4, 0)));
  CHECK((materialize(h) - Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("materialize Cauchy gives the Hilbert matrix", "[structmat]") {
  Vec u(10), v(8);
  for (Index i = 0; i < 10; ++i) u[i] = static_cast<double>(i + 1);
  for (Index j = 0; j < 8; ++j) v[j] = -static_cast<double>(j);
  const Mat A = materialize(make_cauchy_handle(u, v));
  for (Index i = 0; i < 10; ++i)
    for (Index j = 0; j < 8; ++j)
      CHECK(A(i, j) == 1.0 / static_cast<double>(i + j + 1));
}

TEST_CASE("materialize Vandermonde uses zero-based exponents", "[structmat]") {
  Vec nodes(3);
  nodes << 0.0, 0.5, 2.0;
  const Mat V = materialize(make_handle(StructureKind::Vandermonde, 4, 3, nodes));
  CHECK(V(0, 0) == 1.0);  // 0^0 = 1 by convention
  CHECK(V(1, 0) == 0.0);
  CHECK(V(3, 1) == 0.125);
  CHECK(V(2, 2) == 4.0);
}

TEST_CASE("canonical basis SymToeplitz diagonal indicators", "[structmat]") {
  const LinearBasis B = canonical_basis(StructureKind::SymToeplitz, 5, 5);
  REQUIRE(B.size() == 5);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j)
      CHECK(B.matrices[2](i, j) == (std::abs(i - j) == 2 ? 1.0 : 0.0));
  GaussianStream g(3);
  const Vec a = gaussian_vec(g, 5);
  Mat S = Mat::Zero(5, 5);
  for (Index t = 0; t < 5; ++t) S += a[t] * B.matrices[t];
  const Mat A = materialize(make_handle(StructureKind::SymToeplitz, 5, 5, a));
  CHECK((S - A).norm() == 0.0);
}

TEST_CASE("canonical basis Hankel ordering starts at the (0,0) corner", "[structmat]") {
  const LinearBasis B = canonical_basis(StructureKind::Hankel, 6, 6);
  REQUIRE(B.size() == 11);
  // Y1 = g([e1; 0]): a one exactly at the antidiagonal i + j = 0.
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      CHECK(B.matrices[0](i, j) == (i + j == 0 ? 1.0 : 0.0));
  GaussianStream g(4);
  const Vec a = gaussian_vec(g, 11);
  Mat S = Mat::Zero(6, 6);
  for (Index t = 0; t < 11; ++t) S += a[t] * B.matrices[t];
  CHECK((S - materialize(make_handle(StructureKind::Hankel, 6, 6, a))).norm() == 0.0);
}

TEST_CASE("canonical basis Toeplitz 2x2 sums to all-ones", "[structmat]") {
  const LinearBasis B = canonical_basis(StructureKind::Toeplitz, 2, 2);
  REQUIRE(B.size() == 3);
  Mat S = Mat::Zero(2, 2);
  for (const Mat& Y : B.matrices) S += Y;
  CHECK((S - Mat::Ones(2, 2)).norm() == 0.0);
}

TEST_CASE("canonical basis rejects nonlinear kinds", "[structmat]") {
  CHECK_THROWS_MATCHES(canonical_basis(StructureKind::Vandermonde, 4, 3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::UnsupportedForNonlinear;
                       }));
  CHECK_THROWS_AS(canonical_basis(StructureKind::Cauchy, 4, 3), Error);
}

TEST_CASE("params_from_dense identity under SymToeplitz is e1", "[structmat]") {
  const Vec a = params_from_dense(StructureKind::SymToeplitz, Mat::Identity(5, 5));
  CHECK((a - Vec::Unit(5, 0)).norm() == 0.0);
}

TEST_CASE("params_from_dense recovers the Hankel example parameters", "[structmat]") {
  const Example ex = gen_example("hankel6");
  const Vec a = params_from_dense(StructureKind::Hankel, materialize(ex.handle));
  REQUIRE(a.size() == 11);
  Vec want(11);
  want << 1e-3, 1, 1, -1, 0, 0, 0, -1, 1, 1, 0;
  CHECK((a - want).norm() == 0.0);
}

TEST_CASE("params round trip for all linear kinds", "[structmat][property]") {
  const StructureKind kinds[] = {StructureKind::SymToeplitz, StructureKind::Toeplitz,
                                 StructureKind::Hankel};
  for (StructureKind kind : kinds) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      GaussianStream g(seed);
      const Index n = 3 + static_cast<Index>(g.uniform01() * 8);
      const Index m = kind == StructureKind::SymToeplitz
                          ? n
                          : n + static_cast<Index>(g.uniform01() * 5);
      const auto h = random_handle(kind, g, m, n);
      const Vec back = params_from_dense(kind, materialize(h));
      REQUIRE(relvec(back, h.params) <= 1e-12);
    }
  }
}

TEST_CASE("params_from_dense flags out-of-class matrices", "[structmat]") {
  Mat A = Mat::Identity(4, 4);
  A(2, 0) = 0.5;  // diagonal -2 now holds {0.5, 0}: not constant
  CHECK_THROWS_MATCHES(params_from_dense(StructureKind::Toeplitz, A), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotInClass;
                       }));
}

TEST_CASE("vdm_derived_v1 small cases", "[structmat]") {
  {
    const auto h = make_handle(StructureKind::Vandermonde, 3, 1, Vec(Vec::Constant(1, 2.0)));
    const Mat V = materialize(h);
    const Mat V1 = vdm_derived_v1(V);
    Vec want(3);
    want << 0, 1, 4;  // derivative of [1, a, a^2] at a = 2
    CHECK((V1.col(0) - want).norm() == 0.0);
  }
  {
    const auto h = make_handle(StructureKind::Vandermonde, 1, 3, Vec(Vec::LinSpaced(3, 0.5, 1.5)));
    CHECK(vdm_derived_v1(materialize(h)).norm() == 0.0);
  }
}

TEST_CASE("vdm_derived_v1 matches finite differences on the 25x10 example",
          "[structmat]") {
  const Example ex = gen_example("vandermonde25x10");
  const Mat V = materialize(ex.handle);
  const Mat V1 = vdm_derived_v1(V);
  const double delta = 1e-6;
  for (Index j = 0; j < ex.handle.n; ++j) {
    StructuredMatrixHandle hp = ex.handle;
    hp.params[j] += delta;
    const Mat fd = (materialize(hp) - V) / delta;
    // dV/da_j only touches column j and equals column j of V1
    CHECK((Mat(fd.col(j)) - Mat(V1.col(j))).norm() <= 1e-3 * (1.0 + V1.col(j).norm()));
  }
}

TEST_CASE("cauchy_derived_c1 values and first-order rule", "[structmat]") {
  CHECK(cauchy_derived_c1(Vec::Constant(1, 2.0), Vec::Constant(1, 1.0))(0, 0) == 1.0);

  const Example ex = gen_example("cauchy10x8");
  const Mat C1 = cauchy_derived_c1(Vec(ex.handle.params.head(10)),
                                   Vec(ex.handle.params.tail(8)));
  for (Index i = 0; i < 10; ++i)
    for (Index j = 0; j < 8; ++j) {
      const double d = static_cast<double>(i + j + 1);
      CHECK(rel(C1(i, j), 1.0 / (d * d)) <= 1e-15);
    }

  // dC = Diag(du) C1 - C1 Diag(dv) to first order
  GaussianStream g(9);
  Vec u(4), v(3);
  for (Index i = 0; i < 4; ++i) u[i] = static_cast<double>(i + 1) + g.uniform01();
  for (Index j = 0; j < 3; ++j) v[j] = -static_cast<double>(j) - g.uniform01();
  const Vec du = gaussian_vec(g, 4), dv = gaussian_vec(g, 3);
  const double delta = 1e-7;
  const Mat C = materialize(make_cauchy_handle(u, v));
  const Mat Cp = materialize(make_cauchy_handle(Vec(u + delta * du), Vec(v + delta * dv)));
  const Mat fd = (Cp - C) / delta;
  const Mat C1r = cauchy_derived_c1(u, v);
  const Mat lin = Mat(du.asDiagonal()) * C1r * -1.0 + C1r * Mat(dv.asDiagonal());
  // dc_ij/du_i = -1/(u_i-v_j)^2, dc_ij/dv_j = +1/(u_i-v_j)^2
  CHECK((fd - lin).norm() <= 1e-5 * lin.norm());

  Vec e(7);
  e << du, dv;
  CHECK((direction_matrix(make_cauchy_handle(u, v), e) - lin).norm() <=
        1e-14 * lin.norm());
}

TEST_CASE("cauchy separation guard", "[structmat]") {
  CHECK_THROWS_MATCHES(
      make_cauchy_handle(Vec::Constant(1, 1.0), Vec::Constant(1, 1.0)), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == ErrorKind::DegenerateStructure;
      }));
}

TEST_CASE("absolute-value identity for canonical bases", "[structmat][property]") {
  const StructureKind kinds[] = {StructureKind::SymToeplitz, StructureKind::Toeplitz,
                                 StructureKind::Hankel};
  for (StructureKind kind : kinds) {
    GaussianStream g(17);
    const Index m = kind == StructureKind::SymToeplitz ? 5 : 6, n = 5;
    const Index k = param_count(kind, m, n);
    Vec a(k);
    for (Index t = 0; t < k; ++t)
      a[t] = std::floor(g.uniform_sym() * 3.0);  // small integers, exact arithmetic
    const LinearBasis B = canonical_basis(kind, m, n);
    const Mat A = materialize(make_handle(kind, m, n, a));
    Mat absSum = Mat::Zero(m, n);
    for (Index t = 0; t < k; ++t) absSum += std::abs(a[t]) * B.matrices[t];
    CHECK((A.cwiseAbs() - absSum).norm() == 0.0);
  }
}

TEST_CASE("parameter norm bound for Toeplitz and Hankel", "[structmat][property]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GaussianStream g(seed);
    const Index n = 3 + static_cast<Index>(g.uniform01() * 8);
    const Index m = n + static_cast<Index>(g.uniform01() * 5);
    for (StructureKind kind : {StructureKind::Toeplitz, StructureKind::Hankel}) {
      const auto h = random_handle(kind, g, m, n);
      CHECK(h.params.norm() <=
            std::sqrt(2.0) * materialize(h).norm() + 1e-12);
    }
  }
}

TEST_CASE("canonical bases are trace-orthogonal", "[structmat]") {
  for (StructureKind kind : {StructureKind::Toeplitz, StructureKind::Hankel}) {
    const LinearBasis B = canonical_basis(kind, 5, 4);
    for (Index i = 0; i < B.size(); ++i)
      for (Index j = 0; j < B.size(); ++j)
        if (i != j)
          CHECK((B.matrices[i].transpose() * B.matrices[j]).trace() == 0.0);
  }
}

TEST_CASE("direction_matrix maps canonical directions to basis elements",
          "[structmat]") {
  const Example ex = gen_example("toeplitz5");
  const LinearBasis B = canonical_basis(ex.handle.kind, 5, 5);
  for (Index j = 0; j < 5; ++j) {
    const Mat D = direction_matrix(ex.handle, Vec(Vec::Unit(5, j)));
    CHECK((D - B.matrices[j]).norm() == 0.0);
  }
}

TEST_CASE("handle validation catches bad parameter lengths", "[structmat]") {
  CHECK_THROWS_MATCHES(make_handle(StructureKind::SymToeplitz, 5, 5, Vec(Vec::Ones(4))),
                       Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::InvalidArgument;
                       }));
  CHECK_THROWS_AS(make_handle(StructureKind::SymToeplitz, 5, 4, Vec(Vec::Ones(5))),
                  Error);
}

TEST_CASE("handle JSON round trip", "[structmat][json]") {
  GaussianStream g(23);
  for (StructureKind kind :
       {StructureKind::SymToeplitz, StructureKind::Toeplitz, StructureKind::Hankel,
        StructureKind::Vandermonde, StructureKind::Cauchy}) {
    const auto h = random_handle(kind, g, 6, 4);
    const Json j = handle_to_json(h);
    if (kind == StructureKind::Cauchy) {
      CHECK(j.contains("u"));
      CHECK(j.contains("v"));
    } else {
      CHECK(j.contains("params"));
    }
    const auto back = handle_from_json(j);
    CHECK(back.kind == h.kind);
    CHECK(back.m == h.m);
    CHECK(back.n == h.n);
    CHECK((back.params - h.params).norm() == 0.0);
  }
}
