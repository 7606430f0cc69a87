#include <gtest/gtest.h>

#include <numbers>

#include "lrange/ellipsoid.hpp"
#include "lrange/errors.hpp"
#include "support/instances.hpp"

namespace {

using namespace lrange;
using namespace lrange::testing;
using std::numbers::pi;

// D_1 = diag(1, -1, 0) with rows E_11, [[0,1],[1,0]] + 0, [[0,i],[-i,0]] + 0.
LinearMapSpec hand_map() {
  CMatrix e11 = CMatrix::Zero(3, 3), s = CMatrix::Zero(3, 3), q = CMatrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  s(0, 1) = s(1, 0) = 1.0;
  q(0, 1) = Complex(0.0, 1.0);
  q(1, 0) = Complex(0.0, -1.0);
  return LinearMapSpec(3, {{HermitianMatrix(e11)}, {HermitianMatrix(s)}, {HermitianMatrix(q)}});
}

EllipsoidParams diag122() {
  EllipsoidParams p;
  p.b = Eigen::Vector3d(1.0, 0.0, 0.0);
  p.c = Eigen::Vector3cd(0.0, 2.0, Complex(0.0, -2.0));
  return p;
}

TEST(TThetaPhi, ExamplesAndUnitarity) {
  EXPECT_LE((t_theta_phi(0.0, 0.0, 4).matrix() - CMatrix::Identity(4, 4)).norm(), 1e-15);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 1) = 1.0;
  want(1, 0) = -1.0;
  want(2, 2) = 1.0;
  EXPECT_LE((t_theta_phi(pi / 2, 0.0, 3).matrix() - want).norm(), 1e-15);
  EXPECT_LE(t_theta_phi(0.7, 2.1, 5).unitarity_defect(), 1e-12);
  EXPECT_THROW(t_theta_phi(0.1, 0.1, 1), DimensionError);
}

TEST(SliceParams, HandExample) {
  const DiagonalTuple d({Eigen::Vector3d(1.0, -1.0, 0.0)});
  const EllipsoidParams p = slice_params(d, UnitaryMatrix::identity(3), hand_map());
  EXPECT_LE(p.a.norm(), 1e-15);
  EXPECT_LE((p.b - Eigen::Vector3d(1.0, 0.0, 0.0)).norm(), 1e-15);
  EXPECT_LE((p.c - Eigen::Vector3cd(0.0, 2.0, Complex(0.0, -2.0))).norm(), 1e-15);
  EXPECT_LE((p.generator() - Eigen::Vector3d(1.0, 2.0, 2.0).asDiagonal().toDenseMatrix()).norm(), 1e-15);
}

TEST(SliceParams, ScalarTupleCollapsesToPoint) {
  const DiagonalTuple d({Eigen::Vector3d::Constant(2.5), Eigen::Vector3d::Constant(-1.0)});
  const EllipsoidParams p = slice_params(d, haar_unitary(3, 1), random_map(3, 2, 3, 2));
  EXPECT_LE(p.b.norm(), 1e-14);
  EXPECT_LE(p.c.norm(), 1e-14);
}

TEST(SliceParams, ConsistentWithDirectEvaluation) {
  for (int inst = 0; inst < 5; ++inst) {
    const int n = 2 + inst % 3;
    const auto map = random_map(3, 2, n, derive_seed(3, inst));
    const auto d = random_diagonal(2, n, derive_seed(4, inst));
    const auto u = haar_unitary(n, derive_seed(5, inst));
    const EllipsoidParams p = slice_params(d, u, map);
    CounterRng rng(derive_seed(6, inst));
    for (int s = 0; s < 100; ++s) {
      const double theta = rng.uniform(0.0, pi), phi = rng.uniform(0.0, 2.0 * pi);
      const RealPoint direct = eval_at(map, d.to_hermitian(), t_theta_phi(theta, phi, n).matrix() * u.matrix());
      EXPECT_LE((slice_point(p, theta, phi) - Eigen::Vector3d(direct)).norm(), 1e-10);
    }
  }
}

TEST(SliceParams, TwoOutputMapsLiftWithZeroRow) {
  const auto map = random_map(2, 1, 3, 7);
  const auto d = random_diagonal(1, 3, 8);
  const EllipsoidParams p = slice_params(d, haar_unitary(3, 9), map.lifted(3));
  EXPECT_EQ(p.a[2], 0.0);
  EXPECT_EQ(p.b[2], 0.0);
  EXPECT_EQ(std::abs(p.c[2]), 0.0);
  EXPECT_THROW(slice_params(d, UnitaryMatrix::identity(3), random_map(4, 1, 3, 1)), DimensionError);
}

TEST(SlicePoint, SpecialAnglesAndOmegaForm) {
  EllipsoidParams p;
  p.a = Eigen::Vector3d(0.5, -1.0, 2.0);
  p.b = Eigen::Vector3d(1.0, 0.3, -0.2);
  p.c = Eigen::Vector3cd(Complex(0.1, 0.4), Complex(-1.0, 0.2), Complex(0.0, 1.5));
  for (double phi : {0.0, 1.0, 4.0}) EXPECT_LE((slice_point(p, 0.0, phi) - (p.a + p.b)).norm(), 1e-15);
  EXPECT_LE((slice_point(p, pi / 4, 0.0) - (p.a + p.c.real())).norm(), 1e-15);
  const Eigen::Matrix3d m = p.generator();
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double theta = pi * i / 19.0, phi = 2.0 * pi * j / 19.0;
      const Eigen::Vector3d omega = slice_omega(theta, phi);
      EXPECT_NEAR(omega.norm(), 1.0, 1e-15);
      EXPECT_LE((slice_point(p, theta, phi) - (p.a + m * omega)).norm(), 1e-12);
    }
  }
}

TEST(SliceMembership, Trichotomy) {
  const EllipsoidParams p = diag122();
  const MembershipVerdict inside = slice_membership(p, Eigen::Vector3d::Zero(), 1e-10);
  EXPECT_EQ(inside.kind, MembershipKind::Inside);
  EXPECT_LE(inside.omega.norm(), 1e-15);

  const MembershipVerdict surface = slice_membership(p, Eigen::Vector3d(1.0, 0.0, 0.0), 1e-10);
  EXPECT_EQ(surface.kind, MembershipKind::OnSurface);
  EXPECT_NEAR(surface.theta, 0.0, 1e-12);

  const MembershipVerdict outside = slice_membership(p, Eigen::Vector3d(0.0, 3.0, 0.0), 1e-10);
  EXPECT_EQ(outside.kind, MembershipKind::Outside);
  EXPECT_NEAR(outside.distance, 1.0, 1e-9);
}

TEST(SliceMembership, SurfaceVerdictsRoundTrip) {
  const auto map = random_map(3, 2, 3, 10);
  const auto d = random_diagonal(2, 3, 11);
  const EllipsoidParams p = slice_params(d, haar_unitary(3, 12), map);
  CounterRng rng(13);
  for (int s = 0; s < 50; ++s) {
    const Eigen::Vector3d y = slice_point(p, rng.uniform(0.0, pi), rng.uniform(0.0, 2.0 * pi));
    const MembershipVerdict v = slice_membership(p, y, 1e-8);
    ASSERT_EQ(v.kind, MembershipKind::OnSurface);
    EXPECT_LE((slice_point(p, v.theta, v.phi) - y).norm(), 1e-8);
  }
}

TEST(SurfaceDistance, MatchesDenseSurfaceSampling) {
  EllipsoidParams p = diag122();
  p.b = Eigen::Vector3d(1.0, 0.2, 0.0);
  CounterRng rng(14);
  for (int s = 0; s < 10; ++s) {
    const Eigen::Vector3d y(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
    double best = INFINITY;
    for (int i = 0; i <= 400; ++i) {
      for (int j = 0; j < 400; ++j) {
        best = std::min(best, (slice_point(p, pi * i / 400.0, 2.0 * pi * j / 400.0) - y).norm());
      }
    }
    const double got = surface_distance(p, y);
    EXPECT_LE(got, best + 1e-12);
    EXPECT_GE(got, best - 2e-4);
  }
}

TEST(RecoverAngles, InvertsOmega) {
  CounterRng rng(15);
  for (int s = 0; s < 50; ++s) {
    const double theta = rng.uniform(0.01, pi / 2 - 0.01), phi = rng.uniform(-pi + 0.01, pi - 0.01);
    const auto [t, f] = recover_angles(slice_omega(theta, phi));
    EXPECT_NEAR(t, theta, 1e-12);
    EXPECT_NEAR(f, phi, 1e-12);
  }
}

TEST(DegenerateUnitary, DiagonalPrime) {
  // P' = diag(6, 2, 4) with D_1 = diag(1, 0, 0) and C[1][1] = P'.
  const LinearMapSpec map(3, {{HermitianMatrix::diagonal(Eigen::Vector3d(6.0, 2.0, 4.0))},
                              {HermitianMatrix::zero(3)},
                              {HermitianMatrix::zero(3)}});
  const DegenerateCertificate cert = degenerate_unitary(DiagonalTuple({Eigen::Vector3d(1.0, 0.0, 0.0)}), map);
  EXPECT_NEAR(cert.alpha, 4.0, 1e-12);
  const CMatrix vpv = cert.v.matrix() * cert.pprime.matrix() * cert.v.matrix().adjoint();
  EXPECT_NEAR(vpv(0, 0).real(), 4.0, 1e-12);
  EXPECT_NEAR(vpv(1, 1).real(), 4.0, 1e-12);
  EXPECT_LE(std::abs(vpv(1, 0)), 1e-12);
  EXPECT_LE(cert.v.unitarity_defect(), 1e-12);
}

TEST(DegenerateUnitary, ZeroPrimeGivesIdentity) {
  const auto map = random_map(3, 1, 3, 16);
  const DegenerateCertificate cert = degenerate_unitary(DiagonalTuple({Eigen::Vector3d(1.0, 1.0, 5.0)}), map);
  EXPECT_EQ(cert.alpha, 0.0);
  EXPECT_LE((cert.v.matrix() - CMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(DegenerateUnitary, FlattensFirstCoordinate) {
  for (int inst = 0; inst < 5; ++inst) {
    const auto map = random_map(3, 2, 4, derive_seed(17, inst));
    const auto d = random_diagonal(2, 4, derive_seed(18, inst));
    const DegenerateCertificate cert = degenerate_unitary(d, map);
    const EllipsoidParams p = slice_params(d, cert.v, map);
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < 30; ++i) {
      for (int j = 0; j < 30; ++j) {
        const double x = slice_point(p, pi * i / 29.0, 2.0 * pi * j / 29.0)[0];
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    EXPECT_LE(hi - lo, 1e-8);
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(p.generator());
    const double smax = svd.singularValues()[0];
    EXPECT_LE(std::abs(p.generator().determinant()), 1e-8 * smax * smax * smax + 1e-300);
  }
  EXPECT_THROW(degenerate_unitary(random_diagonal(1, 2, 1), random_map(3, 1, 2, 1)), DimensionError);
}

}  // namespace
