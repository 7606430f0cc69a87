#include "lrange/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lrange/errors.hpp"

namespace lrange::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("invalid input at '" + field + "': " + what);
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }

double real_from_json(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

int int_from_json(const Json& j, const std::string& field, int min_value) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value || v > 1000000) fail(field, "expected an integer >= " + std::to_string(min_value));
  return static_cast<int>(v);
}

const Json& array_of(const Json& j, const std::string& field, std::size_t size) {
  if (!j.is_array()) fail(field, "expected an array");
  if (j.size() != size) fail(field, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  return j;
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& field, int n) {
  const CMatrix m = matrix_from_json(j, field);
  if (m.rows() != n) fail(field, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  try {
    return HermitianMatrix(m);
  } catch (const InvariantError& e) {
    fail(field, e.what());
  }
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RealPoint& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

Json to_json(const HermitianTuple& a) {
  Json items = Json::array();
  for (const auto& x : a.items()) items.push_back(to_json(x.matrix()));
  return {{"n", a.dim()}, {"m", a.size()}, {"items", std::move(items)}};
}

Json to_json(const DiagonalTuple& d) {
  Json vectors = Json::array();
  for (const auto& v : d.vectors()) vectors.push_back(to_json(v));
  return {{"n", d.dim()}, {"m", d.size()}, {"vectors", std::move(vectors)}};
}

Json to_json(const LinearMapSpec& map) {
  Json coeffs = Json::array();
  for (const auto& row : map.coeffs()) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(to_json(c.matrix()));
    coeffs.push_back(std::move(r));
  }
  return {{"l", map.out_dim()}, {"m", map.tuple_size()}, {"n", map.dim()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const PinchChain& chain) {
  Json steps = Json::array();
  for (const auto& p : chain.steps()) steps.push_back({{"s", p.s + 1}, {"t", p.t + 1}, {"alpha", p.alpha}});
  return {{"n", chain.dim()}, {"steps", std::move(steps)}};
}

Json to_json(const EllipsoidParams& params) {
  Json c = Json::array();
  for (int k = 0; k < 3; ++k) c.push_back(to_json(params.c[k]));
  return {{"a", to_json(RealPoint(params.a))}, {"b", to_json(RealPoint(params.b))}, {"c", std::move(c)}};
}

Json to_json(const Witness& w) {
  return {{"uprime", to_json(w.uprime.matrix())}, {"theta", w.theta}, {"phi", w.phi}, {"t", w.t},
          {"residual", w.residual}};
}

Json to_json(const MembershipResult& r) {
  return {{"distance", r.distance},
          {"iterations", r.iterations},
          {"restarts_used", r.restarts_used},
          {"ubest", to_json(r.ubest.matrix())}};
}

Json to_json(const CertReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"index", f.index},
                        {"seed", f.seed},
                        {"alpha", f.alpha},
                        {"residual", std::isfinite(f.residual) ? Json(f.residual) : Json("inf")},
                        {"detail", f.detail}});
  }
  Json out = {{"kind", r.kind},
              {"verdict", r.pass() ? "pass" : "fail"},
              {"checked", r.checked},
              {"max_residual", std::isfinite(r.max_residual) ? Json(r.max_residual) : Json("inf")}};
  if (r.kind == "star") out["max_synthesis_error"] = r.max_synthesis_error;
  out["failures"] = std::move(failures);
  return out;
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {real_from_json(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) fail(field, "expected a complex number [re, im] or a real");
  return {real_from_json(j[0], field + "[0]"), real_from_json(j[1], field + "[1]")};
}

CMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rf = at(field, r);
    if (!j[r].is_array() || j[r].size() != n) fail(rf, "expected a row of " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c], at(rf, c));
    }
  }
  return m;
}

RealPoint vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of numbers");
  RealPoint v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = real_from_json(j[k], at(field, k));
  return v;
}

const Json& require(const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) fail(field.empty() ? "<root>" : field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(dot(field, key), "missing field");
  return *it;
}

HermitianTuple tuple_from_json(const Json& j, const std::string& field) {
  const int n = int_from_json(require(j, "n", field), dot(field, "n"), 1);
  const int m = int_from_json(require(j, "m", field), dot(field, "m"), 1);
  const std::string items_field = dot(field, "items");
  const Json& items = array_of(require(j, "items", field), items_field, static_cast<std::size_t>(m));
  std::vector<HermitianMatrix> out;
  for (std::size_t i = 0; i < items.size(); ++i) out.push_back(hermitian_from_json(items[i], at(items_field, i), n));
  return HermitianTuple(std::move(out));
}

DiagonalTuple diagonal_from_json(const Json& j, const std::string& field) {
  const int n = int_from_json(require(j, "n", field), dot(field, "n"), 1);
  const int m = int_from_json(require(j, "m", field), dot(field, "m"), 1);
  const std::string vf = dot(field, "vectors");
  const Json& vectors = array_of(require(j, "vectors", field), vf, static_cast<std::size_t>(m));
  std::vector<RealVector> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    array_of(vectors[i], at(vf, i), static_cast<std::size_t>(n));
    out.push_back(vector_from_json(vectors[i], at(vf, i)));
  }
  return DiagonalTuple(std::move(out));
}

LinearMapSpec map_from_json(const Json& j, const std::string& field) {
  const int l = int_from_json(require(j, "l", field), dot(field, "l"), 1);
  const int m = int_from_json(require(j, "m", field), dot(field, "m"), 1);
  const int n = int_from_json(require(j, "n", field), dot(field, "n"), 1);
  const std::string cf = dot(field, "coeffs");
  const Json& coeffs = array_of(require(j, "coeffs", field), cf, static_cast<std::size_t>(l));
  std::vector<std::vector<HermitianMatrix>> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Json& row = array_of(coeffs[k], at(cf, k), static_cast<std::size_t>(m));
    std::vector<HermitianMatrix> r;
    for (std::size_t i = 0; i < row.size(); ++i) r.push_back(hermitian_from_json(row[i], at(at(cf, k), i), n));
    out.push_back(std::move(r));
  }
  return LinearMapSpec(n, std::move(out));
}

PinchChain chain_from_json(const Json& j, const std::string& field) {
  const int n = int_from_json(require(j, "n", field), dot(field, "n"), 1);
  const std::string sf = dot(field, "steps");
  const Json& steps = require(j, "steps", field);
  if (!steps.is_array()) fail(sf, "expected an array");
  std::vector<Pinching> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string f = at(sf, k);
    Pinching p{int_from_json(require(steps[k], "s", f), dot(f, "s"), 1) - 1,
               int_from_json(require(steps[k], "t", f), dot(f, "t"), 1) - 1,
               real_from_json(require(steps[k], "alpha", f), dot(f, "alpha"))};
    try {
      p.validate(n);
    } catch (const DimensionError& e) {
      fail(f, e.what());
    }
    out.push_back(p);
  }
  return PinchChain(n, std::move(out));
}

UnitaryMatrix unitary_from_json(const Json& j, const std::string& field) {
  const CMatrix m = matrix_from_json(j, field);
  try {
    return UnitaryMatrix(m);
  } catch (const InvariantError& e) {
    fail(field, e.what());
  }
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string cloud_csv(const PointCloud& cloud) {
  std::string out;
  for (int k = 0; k < cloud.l; ++k) out += (k ? ",x" : "x") + std::to_string(k + 1);
  out += '\n';
  char buf[32];
  for (const auto& p : cloud.points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      if (k) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace lrange::io
