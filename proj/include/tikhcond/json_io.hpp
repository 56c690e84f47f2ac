#pragma once
// JSON encoding for handles, problems, condition reports, and experiment
// specs. Uses nlohmann ordered_json so key order is stable; non-finite
// numbers are emitted as null.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tikhcond/cond_exact.hpp"
#include "tikhcond/cond_sce.hpp"
#include "tikhcond/core.hpp"
#include "tikhcond/experiment.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/problems.hpp"
#include "tikhcond/reproduce.hpp"
#include "tikhcond/structured.hpp"

namespace tikhcond {

using Json = nlohmann::ordered_json;

inline Json json_number(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

inline Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(json_number(v[i]));
  return a;
}

inline Vec vec_from_json(const Json& a) {
  if (!a.is_array()) fail(ErrorKind::Io, "expected a JSON array of numbers");
  Vec v(static_cast<Index>(a.size()));
  Index i = 0;
  for (const Json& e : a) {
    if (!e.is_number()) fail(ErrorKind::Io, "expected a numeric JSON entry");
    v[i++] = e.get<double>();
  }
  return v;
}

inline Json to_json(const Mat& A) {
  Json rows = Json::array();
  for (Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < A.cols(); ++j) row.push_back(json_number(A(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty())
    fail(ErrorKind::Io, "expected a non-empty JSON array of rows");
  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(rows[0].size());
  Mat A(m, n);
  for (Index i = 0; i < m; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n)
      fail(ErrorKind::Io, "ragged JSON matrix");
    for (Index j = 0; j < n; ++j)
      A(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return A;
}

inline Json handle_to_json(const StructuredMatrixHandle& h) {
  Json j;
  j["kind"] = to_string(h.kind);
  j["m"] = h.m;
  j["n"] = h.n;
  if (h.kind == StructureKind::Cauchy) {
    j["u"] = to_json(Vec(h.params.head(h.m)));
    j["v"] = to_json(Vec(h.params.tail(h.n)));
  } else {
    j["params"] = to_json(h.params);
  }
  if (h.kind == StructureKind::GeneralLinear) {
    Json basis = Json::array();
    for (const Mat& S : h.basis.matrices) basis.push_back(to_json(S));
    j["basis"] = std::move(basis);
  }
  return j;
}

inline StructuredMatrixHandle handle_from_json(const Json& j) {
  if (!j.contains("kind") || !j.contains("m") || !j.contains("n"))
    fail(ErrorKind::Io, "handle JSON needs kind, m, n");
  const StructureKind kind = structure_kind_from_string(j["kind"].get<std::string>());
  const Index m = j["m"].get<Index>();
  const Index n = j["n"].get<Index>();
  if (kind == StructureKind::Cauchy) {
    if (j.contains("u") && j.contains("v")) {
      const StructuredMatrixHandle h =
          make_cauchy_handle(vec_from_json(j["u"]), vec_from_json(j["v"]));
      if (h.m != m || h.n != n) fail(ErrorKind::Io, "cauchy u,v lengths must match m,n");
      return h;
    }
    if (!j.contains("params")) fail(ErrorKind::Io, "cauchy handle needs u,v or params");
    const Vec p = vec_from_json(j["params"]);
    if (p.size() != m + n) fail(ErrorKind::Io, "cauchy params must have length m+n");
    return make_cauchy_handle(Vec(p.head(m)), Vec(p.tail(n)));
  }
  if (kind == StructureKind::GeneralLinear) {
    if (!j.contains("basis")) fail(ErrorKind::Io, "general handle needs a basis");
    LinearBasis basis;
    for (const Json& bj : j["basis"]) basis.matrices.push_back(mat_from_json(bj));
    return make_general_linear(m, n, std::move(basis), vec_from_json(j["params"]));
  }
  if (!j.contains("params")) fail(ErrorKind::Io, "handle JSON needs params");
  return make_handle(kind, m, n, vec_from_json(j["params"]));
}

// Regularization operator spec: {"kind": "identity"|"l1"|"dense", "rows": [[...]]}.
inline Mat regop_from_json(const Json& j, Index n) {
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorKind::Io, "L JSON needs a kind (identity|l1|dense)");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return Mat::Identity(n, n);
  if (kind == "l1") return gen_L1(n);
  if (kind == "dense") {
    if (!j.contains("rows")) fail(ErrorKind::Io, "dense L needs rows");
    Mat L = mat_from_json(j["rows"]);
    if (L.cols() != n) fail(ErrorKind::Io, "L column count must equal n");
    return L;
  }
  fail(ErrorKind::Io, "unknown L kind '" + kind + "'");
}

// Problem file: the handle fields plus {"b": [...], "L": {...}, "lambda": x}.
inline Example problem_from_json(const Json& j) {
  Example ex;
  ex.id = "file";
  ex.handle = handle_from_json(j);
  if (!j.contains("b")) fail(ErrorKind::Io, "problem JSON needs b");
  ex.b = vec_from_json(j["b"]);
  if (j.contains("L") && !j["L"].is_null()) {
    const Json& lj = j["L"];
    // an identity spec stays implicit (empty L means identity downstream)
    if (!(lj.is_object() && lj.contains("kind") && lj["kind"] == "identity"))
      ex.L = regop_from_json(lj, ex.handle.n);
  }
  if (j.contains("lambda") && !j["lambda"].is_null())
    ex.default_lambda = j["lambda"].get<double>();
  return ex;
}

inline Json problem_to_json(const Example& ex) {
  Json j = handle_to_json(ex.handle);
  j["b"] = to_json(ex.b);
  if (ex.L.size() == 0) {
    j["L"] = Json{{"kind", "identity"}};
  } else {
    j["L"] = Json{{"kind", "dense"}, {"rows", to_json(ex.L)}};
  }
  j["lambda"] = json_number(ex.default_lambda);
  return j;
}

inline Json condition_report_json(const ConditionTriple& t) {
  Json j;
  j["structure"] = to_string(t.structure);
  j["method"] = to_string(t.method);
  j["normwise"] = json_number(t.normwise);
  j["mixed"] = json_number(t.mixed);
  j["componentwise"] = json_number(t.componentwise);
  Json undef = Json::array();
  for (Index i : t.undefined_components) undef.push_back(i);
  j["undefined_components"] = std::move(undef);
  return j;
}

inline Json sce_report_json(const SceReport& r) {
  Json j;
  j["kappa_sce"] = json_number(r.kappa_sce);
  j["m_sce"] = json_number(r.m_sce);
  j["c_sce"] = json_number(r.c_sce);
  j["k"] = r.samples_used;
  j["seed"] = r.seed;
  return j;
}

inline Json ratio_report_json(const RatioReport& r) {
  Json j;
  j["r_kappa"] = json_number(r.r_kappa);
  j["r_m"] = json_number(r.r_m);
  j["r_c"] = json_number(r.r_c);
  j["err_norm"] = json_number(r.err_norm);
  j["err_mixed"] = json_number(r.err_mixed);
  j["err_comp"] = json_number(r.err_comp);
  j["est_kappa"] = json_number(r.est_kappa);
  j["est_m"] = json_number(r.est_m);
  j["est_c"] = json_number(r.est_c);
  j["undefined"] = r.undefined;
  return j;
}

inline Json table_report_json(const TableReport& rep) {
  Json j;
  j["table"] = rep.table;
  j["pass"] = rep.pass;
  j["failed"] = rep.failed;
  Json cells = Json::array();
  for (const CellResult& c : rep.cells) {
    Json cj;
    cj["row"] = c.row;
    cj["column"] = c.column;
    cj["status"] = to_string(c.status);
    cj["reference"] = json_number(c.reference);
    cj["computed"] = json_number(c.computed);
    cj["frozen"] = json_number(c.frozen);
    cj["rel_dev"] = json_number(c.rel_dev);
    cj["pass"] = c.pass;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

// Experiment spec file: the problem fields plus perturbation and estimator
// settings. Unknown keys are ignored.
inline ExperimentSpec experiment_spec_from_json(const Json& j) {
  const Example ex = problem_from_json(j);
  ExperimentSpec spec;
  spec.handle = ex.handle;
  spec.b = ex.b;
  spec.L = ex.L;
  spec.lambda = ex.default_lambda;
  if (j.contains("M") && !j["M"].is_null()) spec.M = mat_from_json(j["M"]);
  if (j.contains("epsilon")) spec.epsilon = j["epsilon"].get<double>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("structured")) spec.structured = j["structured"].get<bool>();
  if (j.contains("estimator")) {
    const std::string e = j["estimator"].get<std::string>();
    if (e == "exact") spec.estimator = Method::Exact;
    else if (e == "power") spec.estimator = Method::Power;
    else if (e == "sce") spec.estimator = Method::Sce;
    else fail(ErrorKind::Io, "unknown estimator '" + e + "'");
  }
  if (j.contains("sce")) {
    const Json& s = j["sce"];
    if (s.contains("k")) spec.sce.k = s["k"].get<int>();
    if (s.contains("threads")) spec.sce.threads = s["threads"].get<int>();
    if (s.contains("wallis")) {
      const std::string w = s["wallis"].get<std::string>();
      if (w == "exact") spec.sce.wallis_mode = WallisMode::Exact;
      else if (w == "approx") spec.sce.wallis_mode = WallisMode::Approximate;
      else fail(ErrorKind::Io, "unknown wallis mode '" + w + "'");
    }
  }
  if (j.contains("power")) {
    const Json& p = j["power"];
    if (p.contains("max_iters")) spec.power.max_iters = p["max_iters"].get<int>();
    if (p.contains("tol")) spec.power.tol = p["tol"].get<double>();
    if (p.contains("restarts")) spec.power.restarts = p["restarts"].get<int>();
  }
  return spec;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::Io, "cannot parse '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace tikhcond
