#include <gtest/gtest.h>

#include "lrange/errors.hpp"
#include "lrange/io.hpp"
#include "support/instances.hpp"

namespace {

using namespace lrange;
using namespace lrange::testing;
using io::Json;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(Io, ComplexAcceptsPairsAndReals) {
  EXPECT_EQ(io::complex_from_json(Json::parse("[1.5, -2]"), "z"), Complex(1.5, -2.0));
  EXPECT_EQ(io::complex_from_json(Json::parse("3"), "z"), Complex(3.0, 0.0));
  EXPECT_NE(error_of([] { io::complex_from_json(Json::parse("[1, 2, 3]"), "z"); }).find("'z'"), std::string::npos);
}

TEST(Io, TupleRoundTrip) {
  const auto a = random_tuple(2, 3, 1);
  const HermitianTuple back = io::tuple_from_json(Json::parse(io::to_json(a).dump()), "tuple");
  for (int i = 0; i < 2; ++i) EXPECT_EQ((back[i].matrix() - a[i].matrix()).norm(), 0.0);
}

TEST(Io, MapRoundTrip) {
  const auto map = random_map(3, 2, 2, 2);
  const LinearMapSpec back = io::map_from_json(Json::parse(io::to_json(map).dump()), "map");
  ASSERT_EQ(back.out_dim(), 3);
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 2; ++i) EXPECT_EQ((back.coeff(k, i).matrix() - map.coeff(k, i).matrix()).norm(), 0.0);
  }
}

TEST(Io, ChainUsesOneBasedIndices) {
  const PinchChain chain(4, {{0, 3, 0.25}, {1, 2, 0.5}});
  const Json j = io::to_json(chain);
  EXPECT_EQ(j["steps"][0]["s"], 1);
  EXPECT_EQ(j["steps"][0]["t"], 4);
  EXPECT_EQ(io::chain_from_json(j, "chain"), chain);
  const std::string msg =
      error_of([] { io::chain_from_json(Json::parse(R"({"n": 3, "steps": [{"s": 2, "t": 2, "alpha": 0.5}]})"), "chain"); });
  EXPECT_NE(msg.find("chain.steps[0]"), std::string::npos) << msg;
}

TEST(Io, DiagonalRoundTrip) {
  const auto d = random_diagonal(2, 4, 3);
  const DiagonalTuple back = io::diagonal_from_json(io::to_json(d), "diagonal");
  for (int i = 0; i < 2; ++i) EXPECT_EQ((back[i] - d[i]).norm(), 0.0);
}

TEST(Io, ErrorsNameTheField) {
  EXPECT_NE(error_of([] { io::tuple_from_json(Json::parse(R"({"n": 2, "m": 1})"), "tuple"); }).find("tuple.items"),
            std::string::npos);
  const std::string non_hermitian = error_of([] {
    io::tuple_from_json(Json::parse(R"({"n": 2, "m": 1, "items": [[[1, 2], [0, 1]]]})"), "tuple");
  });
  EXPECT_NE(non_hermitian.find("tuple.items[0]"), std::string::npos) << non_hermitian;
  const std::string bad_row = error_of([] {
    io::map_from_json(Json::parse(R"({"l": 1, "m": 1, "n": 2, "coeffs": [[[[1, 0], [0]]]]})"), "map");
  });
  EXPECT_NE(bad_row.find("map.coeffs[0][0][1]"), std::string::npos) << bad_row;
  EXPECT_NE(error_of([] { io::require(Json::parse("{}"), "map", ""); }).find("'map'"), std::string::npos);
  EXPECT_NE(error_of([] { io::unitary_from_json(Json::parse("[[2, 0], [0, 1]]"), "unitary"); }).find("unitary"),
            std::string::npos);
}

TEST(Io, CloudCsvFormat) {
  PointCloud cloud;
  cloud.l = 2;
  cloud.points = {Eigen::Vector2d(0.1, -2.0), Eigen::Vector2d(1.0 / 3.0, 5e-20)};
  const std::string csv = io::cloud_csv(cloud);
  EXPECT_EQ(csv, "x1,x2\n0.10000000000000001,-2\n0.33333333333333331,4.9999999999999999e-20\n");
}

TEST(Io, ReportJsonCarriesVerdictAndFailures) {
  CertReport r;
  r.kind = "convex";
  r.record(3, 77, 0.5, 0.2, 1e-6, "midpoint distance");
  const Json j = io::to_json(r);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["failures"][0]["seed"], 77u);
  EXPECT_EQ(j["max_residual"], 0.2);
}

}  // namespace
