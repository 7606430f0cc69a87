#pragma once

// JSON and CSV forms of the library types. Complex scalars are [re, im]
// (a bare real is accepted on input), matrices are row-major arrays of rows,
// and pinching indices are 1-based on disk.

#include <string>

#include <json.hpp>

#include "lrange/core.hpp"
#include "lrange/ellipsoid.hpp"
#include "lrange/optimize.hpp"
#include "lrange/pinching.hpp"
#include "lrange/verify.hpp"
#include "lrange/witness.hpp"

namespace lrange::io {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const RealPoint& v);
Json to_json(const HermitianTuple& a);
Json to_json(const DiagonalTuple& d);
Json to_json(const LinearMapSpec& map);
Json to_json(const PinchChain& chain);
Json to_json(const EllipsoidParams& params);
Json to_json(const Witness& w);
Json to_json(const MembershipResult& r);
Json to_json(const CertReport& r);

// Readers throw InputError naming the field path, e.g. "map.coeffs[1][0]".
Complex complex_from_json(const Json& j, const std::string& field);
CMatrix matrix_from_json(const Json& j, const std::string& field);
RealPoint vector_from_json(const Json& j, const std::string& field);
HermitianTuple tuple_from_json(const Json& j, const std::string& field);
DiagonalTuple diagonal_from_json(const Json& j, const std::string& field);
LinearMapSpec map_from_json(const Json& j, const std::string& field);
PinchChain chain_from_json(const Json& j, const std::string& field);
UnitaryMatrix unitary_from_json(const Json& j, const std::string& field);

/// Member `key` of object `j`; InputError if absent.
const Json& require(const Json& j, const std::string& key, const std::string& field);

Json parse_file(const std::string& path);

/// "x1,...,xl" header, then one row per point with %.17g and '\n' endings.
std::string cloud_csv(const PointCloud& cloud);

}  // namespace lrange::io
