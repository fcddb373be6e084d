#include "spdorder/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace spdorder::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    parse_error("matrix document needs fields \"n\" and \"data\"");
  }
  if (!j["n"].is_number_integer()) parse_error("\"n\" must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 1 || n > kMaxDimension) parse_error("\"n\" out of range");
  const Json& data = j["data"];
  if (!data.is_array()) parse_error("\"data\" must be an array of rows");
  if (static_cast<long long>(data.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "\"data\" has " + std::to_string(data.size()) +
                                                  " rows but n = " + std::to_string(n));
  }
  Matrix m(n, n);
  for (long long i = 0; i < n; ++i) {
    const Json& row = data[i];
    if (!row.is_array()) parse_error("each row of \"data\" must be an array");
    if (static_cast<long long>(row.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " has wrong length");
    }
    for (long long k = 0; k < n; ++k) {
      if (!row[k].is_number()) parse_error("matrix entries must be numbers");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

Matrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix(read_text_file(path)); }

std::string format_matrix(const Matrix& m) {
  std::string out = "{\"n\": " + std::to_string(m.rows()) + ", \"data\": [";
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out += ", ";
      out += buf;
    }
    out += "]";
  }
  out += "]}";
  return out;
}

ConeSpec cone_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("n")) {
    parse_error("cone spec needs fields \"kind\" and \"n\"");
  }
  if (!j["kind"].is_string()) parse_error("\"kind\" must be a string");
  if (!j["n"].is_number_integer()) parse_error("\"n\" must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 1 || n > kMaxDimension) parse_error("\"n\" out of range");
  const ConeKind kind = cone_kind_from_string(j["kind"].get<std::string>());
  const int dim = static_cast<int>(n);
  switch (kind) {
    case ConeKind::QuadraticAffine:
    case ConeKind::QuadraticTranslation: {
      if (!j.contains("mu") || !j["mu"].is_number()) parse_error("quadratic cones need a numeric \"mu\"");
      const double mu = j["mu"].get<double>();
      return kind == ConeKind::QuadraticAffine ? ConeSpec::quadratic_affine(dim, mu)
                                               : ConeSpec::quadratic_translation(dim, mu);
    }
    case ConeKind::Loewner: return ConeSpec::loewner(dim);
    case ConeKind::HalfSpaceAffine: return ConeSpec::half_space(dim);
    case ConeKind::RayAffine: return ConeSpec::ray(dim);
  }
  parse_error("unknown cone kind");
}

ConeSpec read_cone_spec_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  return cone_spec_from_json(j);
}

Json to_json(const ConeSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind());
  if (spec.is_quadratic()) j["mu"] = spec.mu();
  j["n"] = spec.dim();
  return j;
}

Json to_json(const OrderVerdict& v) {
  Json j;
  j["relation"] = to_string(v.relation);
  j["forward_margin"] = v.forward_margin;
  j["reverse_margin"] = v.reverse_margin;
  return j;
}

Json to_json(const MembershipReport& r) {
  Json j;
  j["inside"] = r.inside;
  j["margin"] = r.margin;
  j["binding"] = to_string(r.binding);
  return j;
}

Json to_json(const PositivityReport& r, int max_witnesses) {
  Json j;
  j["map"] = r.map_tag;
  j["cone"] = to_json(r.cone);
  j["samples_tested"] = r.samples_tested;
  j["violations"] = r.violation_count;
  j["min_output_margin"] = r.min_output_margin;
  Json witnesses = Json::array();
  for (int i = 0; i < max_witnesses && i < static_cast<int>(r.violations.size()); ++i) {
    const Violation& v = r.violations[i];
    Json w;
    w["sigma"] = matrix_rows(v.sigma.matrix());
    w["direction"] = matrix_rows(v.direction.matrix());
    w["output_margin"] = v.output_margin;
    witnesses.push_back(std::move(w));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

}  // namespace spdorder::io
