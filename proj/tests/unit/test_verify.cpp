#include <gtest/gtest.h>

#include "lrange/errors.hpp"
#include "lrange/verify.hpp"
#include "lrange/witness.hpp"
#include "support/instances.hpp"

namespace {

using namespace lrange;
using namespace lrange::testing;

TEST(SampleOrbitCloud, ScalarTupleGivesCenter) {
  const auto map = random_map(3, 2, 3, 1);
  const HermitianTuple a({HermitianMatrix::scalar(3, 1.5), HermitianMatrix::scalar(3, -2.0)});
  const PointCloud cloud = sample_orbit_cloud(map, a, 20, 4);
  for (const auto& p : cloud.points) EXPECT_LE((p - star_center(map, a)).norm(), 1e-12);
}

TEST(SampleOrbitCloud, DeterministicAndReplayable) {
  const auto map = random_map(2, 2, 3, 2);
  const auto a = random_tuple(2, 3, 3);
  const PointCloud c1 = sample_orbit_cloud(map, a, 30, 7), c2 = sample_orbit_cloud(map, a, 30, 7);
  ASSERT_EQ(c1.points.size(), 30u);
  for (std::size_t j = 0; j < 30; ++j) {
    EXPECT_EQ((c1.points[j] - c2.points[j]).norm(), 0.0);
    const auto u = haar_unitary(3, sample_seed(7, j));
    EXPECT_LE((c1.points[j] - eval_at(map, a, u.matrix())).norm(), 1e-12);
  }
  EXPECT_THROW(sample_orbit_cloud(map, a, 0, 1), DimensionError);
}

TEST(SampleOrbitCloud, NumericalRangeOfProjection) {
  const LinearMapSpec map = make_c_map(HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0)), 1);
  const HermitianTuple a({HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0))});
  const PointCloud cloud = sample_orbit_cloud(map, a, 2000, 11);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : cloud.points) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  EXPECT_GE(lo, -1e-12);
  EXPECT_LE(hi, 1.0 + 1e-12);
  EXPECT_GE(hi, 0.99);
}

TEST(SampleOrbitCloud, AffineCovariance) {
  const auto map = random_map(3, 2, 3, 12);
  const auto a = random_tuple(2, 3, 13);
  const PointCloud base = sample_orbit_cloud(map, a, 25, 14);
  const PointCloud moved = sample_orbit_cloud(map, affine_combination(a, -0.7, 1.3), 25, 14);
  const RealPoint shift = eval_map(map, identity_tuple(2, 3));
  for (std::size_t j = 0; j < 25; ++j) EXPECT_LE((moved.points[j] - (-0.7 * base.points[j] + 1.3 * shift)).norm(), 1e-9);
}

TEST(SampleOrbitCloud, PinchedPointsAdmitWitnesses) {
  const auto map = random_map(3, 2, 3, 15);
  const auto d = random_diagonal(2, 3, 16);
  const PinchChain chain = random_chain(3, 2, 17);
  const DiagonalTuple dhat = apply_chain(chain, d);
  const PointCloud cloud = sample_orbit_cloud(map, dhat.to_hermitian(), 10, 18);
  for (std::size_t j = 0; j < cloud.points.size(); ++j) {
    const Witness w = chain_witness(d, map, chain, haar_unitary(3, sample_seed(18, j)), 1e-8);
    EXPECT_LE((eval_at(map, d.to_hermitian(), w.uprime.matrix()) - cloud.points[j]).norm(), 1e-3);
  }
}

TEST(CheckStarShaped, ScalarTuplePassesTrivially) {
  const auto map = random_map(3, 2, 3, 19);
  const DiagonalTuple d({Eigen::Vector3d::Constant(1.0), Eigen::Vector3d::Constant(2.0)});
  const CertReport r = check_star_shaped(map, d, 3, default_alpha_grid(), 1e-3, 20);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 27u);
  EXPECT_LE(r.max_residual, 1e-12);
}

TEST(CheckStarShaped, RandomThreeByThree) {
  const auto map = random_map(3, 3, 3, 21);
  const auto d = random_diagonal(3, 3, 22);
  const CertReport r = check_star_shaped(map, d, 4, {0.1, 0.5, 0.9}, 1e-3, 23);
  EXPECT_TRUE(r.pass()) << (r.failures.empty() ? "" : r.failures.front().detail);
  EXPECT_LE(r.max_residual, 1e-3);
}

TEST(CheckStarShaped, TwoByTwoCMap) {
  const LinearMapSpec map = make_c_map(HermitianMatrix::diagonal(Eigen::Vector2d(2.0, -1.0)), 1).lifted(2);
  const CertReport r =
      check_star_shaped(map, DiagonalTuple({Eigen::Vector2d(1.0, -1.0)}), 10, default_alpha_grid(), 1e-3, 24);
  EXPECT_TRUE(r.pass());
}

TEST(CheckConvex, SinglePointRangeAndCMap) {
  const auto map = random_map(2, 1, 3, 25);
  const HermitianTuple scalar({HermitianMatrix::scalar(3, 2.0)});
  EXPECT_TRUE(check_convex(map, scalar, 3, 1e-10, 26).pass());

  CounterRng rng(27);
  const LinearMapSpec cmap = make_c_map(random_hermitian(3, rng), 2);
  const CertReport r = check_convex(cmap, random_tuple(2, 3, 28), 10, 1e-4, 29);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.kind, "convex");
}

TEST(CheckConvex, CounterexampleMidpointIsFar) {
  const Counterexample ce = counterexample_instance(3, 1, 4);
  // (1,0,1,0) and (1,0,-1,0) are both in W_L(D); their midpoint is the target.
  const RealPoint p = Eigen::Vector4d(1.0, 0.0, 1.0, 0.0), q = Eigen::Vector4d(1.0, 0.0, -1.0, 0.0);
  CMatrix swap = CMatrix::Identity(3, 3);
  swap.row(0).swap(swap.row(1));
  EXPECT_LE((eval_at(ce.map, ce.d.to_hermitian(), CMatrix(CMatrix::Identity(3, 3))) - p).norm(), 1e-14);
  EXPECT_LE((eval_at(ce.map, ce.d.to_hermitian(), swap) - q).norm(), 1e-14);
  DescentOptions opts;
  opts.restarts = 16;
  const double mid = orbit_distance(ce.map, ce.d.to_hermitian(), 0.5 * (p + q), opts).distance;
  EXPECT_NEAR(mid, std::sqrt(0.5), 1e-3);
}

TEST(ScaleOffdiag, EndpointsAndTraces) {
  const auto a = random_tuple(2, 4, 30);
  const HermitianTuple same = scale_offdiag(a, 1.0);
  const HermitianTuple diag = scale_offdiag(a, 0.0);
  const HermitianTuple half = scale_offdiag(a, 0.37);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ((same[i].matrix() - a[i].matrix()).norm(), 0.0);
    EXPECT_EQ((diag[i].matrix() - CMatrix(a[i].matrix().diagonal().asDiagonal())).norm(), 0.0);
    EXPECT_EQ(half[i].trace(), a[i].trace());
    EXPECT_NEAR(std::abs(half[i](0, 1)), 0.37 * std::abs(a[i](0, 1)), 1e-15);
  }
  EXPECT_THROW(scale_offdiag(a, -0.1), DimensionError);
  EXPECT_THROW(scale_offdiag(a, 1.1), DimensionError);
}

TEST(CheckCtInclusion, EpsilonOneAndHalf) {
  const auto map = random_map(2, 2, 3, 31);
  const auto a = random_tuple(2, 3, 32);
  const CertReport same = check_ct_inclusion(map, a, 1.0, 5, 1e-10, 33);
  EXPECT_TRUE(same.pass());
  EXPECT_LE(same.max_residual, 1e-12);
  const CertReport half = check_ct_inclusion(map, a, 0.5, 10, 1e-4, 34);
  EXPECT_TRUE(half.pass()) << half.max_residual;
  EXPECT_THROW(check_ct_inclusion(random_map(3, 2, 3, 1), a, 0.5, 1, 1e-4, 1), DimensionError);
}

TEST(CheckCtInclusion, DiagonalPartCenterIsReachable) {
  const auto map = random_map(2, 2, 3, 35);
  const auto a = random_tuple(2, 3, 36);
  const RealPoint center = star_center(map, scale_offdiag(a, 0.0));
  EXPECT_LE((center - star_center(map, a)).norm(), 1e-12);
  EXPECT_LE(orbit_distance(map, a, center).distance, 1e-6);
}

TEST(Counterexample, InstanceShape) {
  const Counterexample ce = counterexample_instance(4, 2, 5);
  EXPECT_EQ(ce.map.out_dim(), 5);
  EXPECT_EQ(ce.map.tuple_size(), 2);
  EXPECT_LE((ce.dhat[0] - Eigen::Vector4d(0.5, 0.5, 0.0, 0.0)).norm(), 1e-16);
  EXPECT_EQ(ce.dhat[1].norm(), 0.0);
  EXPECT_LE((eval_map(ce.map, ce.dhat.to_hermitian()) - ce.target).norm(), 1e-15);
  EXPECT_THROW(counterexample_instance(1, 1, 4), DimensionError);
  EXPECT_THROW(counterexample_instance(3, 1, 3), DimensionError);
}

TEST(Counterexample, SeparationAcrossRestarts) {
  for (int n : {2, 3, 5}) {
    const CounterexampleReport r = run_counterexample(n, 1, 4, 32, 7);
    EXPECT_TRUE(r.pass) << "n=" << n;
    EXPECT_GT(r.distance, 0.7);
    EXPECT_LE(r.hat_distance, 1e-10);
  }
}

TEST(CertReport, VerdictTracksFailures) {
  CertReport r;
  r.record(0, 1, 0.5, 1e-9, 1e-6);
  EXPECT_TRUE(r.pass());
  r.record(1, 2, 0.5, 1e-3, 1e-6, "too far");
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].seed, 2u);
  EXPECT_EQ(r.checked, 2u);
  EXPECT_EQ(r.max_residual, 1e-3);
}

}  // namespace
