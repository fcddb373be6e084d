#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spdorder/cones.hpp"
#include "spdorder/monotone.hpp"
#include "spdorder/orders.hpp"

namespace spdorder::io {

using Json = nlohmann::ordered_json;

/// {"n": n, "data": [[...], ...]} (row-major). Throws ParseError on malformed
/// text or shape, DimensionMismatch when "n" disagrees with "data".
Matrix matrix_from_json(const Json& j);
Matrix parse_matrix(const std::string& text);
Matrix read_matrix_file(const std::string& path);

/// Writes the matrix document with 17 significant digits.
std::string format_matrix(const Matrix& m);

/// {"kind": "quad-affine" | "quad-translate" | "loewner" | "half-space" | "ray",
///  "mu": number (quadratic kinds), "n": integer}.
ConeSpec cone_spec_from_json(const Json& j);
ConeSpec read_cone_spec_file(const std::string& path);
Json to_json(const ConeSpec& spec);

Json to_json(const OrderVerdict& v);
Json to_json(const MembershipReport& r);
/// Counts, min margin and at most `max_witnesses` violation witnesses.
Json to_json(const PositivityReport& r, int max_witnesses = 5);

std::string read_text_file(const std::string& path);

}  // namespace spdorder::io
