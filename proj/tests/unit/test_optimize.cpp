#include <gtest/gtest.h>

#include "lrange/errors.hpp"
#include "lrange/linalg.hpp"
#include "lrange/optimize.hpp"
#include "lrange/verify.hpp"
#include "support/instances.hpp"

namespace {

using namespace lrange;
using namespace lrange::testing;

CMatrix random_skew(int n, CounterRng& rng) { return random_hermitian(n, rng).matrix() * Complex(0.0, 1.0); }

TEST(Gradient, VanishesAtExactTarget) {
  const auto map = random_map(2, 2, 3, 1);
  const auto a = random_tuple(2, 3, 2);
  const auto u = haar_unitary(3, 3);
  const RealPoint y = eval_map(map, conjugate_tuple(a, u));
  EXPECT_LE(gradient(map, a, u, y).norm(), 1e-12);
}

TEST(Gradient, VanishesForCommutingDiagonalFamily) {
  const DiagonalTuple d = random_diagonal(2, 3, 4);
  const LinearMapSpec map(3, {{HermitianMatrix::diagonal(Eigen::Vector3d(1, 2, 3)),
                               HermitianMatrix::diagonal(Eigen::Vector3d(0, -1, 4))}});
  const RealPoint y = RealPoint::Constant(1, 7.0);
  EXPECT_LE(gradient(map, d.to_hermitian(), UnitaryMatrix::identity(3), y).norm(), 1e-14);
}

TEST(Gradient, MatchesFiniteDifferences) {
  for (int inst = 0; inst < 10; ++inst) {
    const int n = 3 + inst % 2;
    const auto map = random_map(3, 2, n, derive_seed(5, inst));
    const auto a = random_tuple(2, n, derive_seed(6, inst));
    const auto u = haar_unitary(n, derive_seed(7, inst));
    CounterRng rng(derive_seed(8, inst));
    const RealPoint y = RealPoint::NullaryExpr(3, [&](Eigen::Index) { return rng.normal(); });
    const CMatrix g = gradient(map, a, u, y);
    EXPECT_LE((g + g.adjoint()).norm(), 1e-12);
    const CMatrix k = random_skew(n, rng);
    const double eps = 1e-6;
    const double fd = (orbit_objective(map, a, u.matrix() * expm_skew(eps * k), y) -
                       orbit_objective(map, a, u.matrix(), y)) /
                      eps;
    const double analytic = real_inner(g, k);
    EXPECT_LE(std::abs(fd - analytic), 1e-5 * std::max(1.0, std::abs(analytic))) << "instance " << inst;
  }
}

TEST(OrbitDistance, ExactTargetAtStart) {
  const auto map = random_map(2, 2, 3, 9);
  const auto a = random_tuple(2, 3, 10);
  const MembershipResult r = orbit_distance(map, a, eval_map(map, a));
  EXPECT_LE(r.distance, 1e-12);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.restarts_used, 1);
  EXPECT_TRUE(r.member);
}

TEST(OrbitDistance, ReachesStarCenter) {
  for (int inst = 0; inst < 5; ++inst) {
    const auto map = random_map(2, 3, 3, derive_seed(11, inst));
    const auto a = random_tuple(3, 3, derive_seed(12, inst));
    DescentOptions opts;
    opts.seed = inst;
    const MembershipResult r = orbit_distance(map, a, star_center(map, a), opts);
    EXPECT_LE(r.distance, 1e-6);
    EXPECT_LE((eval_at(map, a, r.ubest.matrix()) - star_center(map, a)).norm(), 1e-6);
  }
}

TEST(OrbitDistance, CounterexampleDistances) {
  for (int n : {2, 3}) {
    const Counterexample ce = counterexample_instance(n, 1, 4);
    DescentOptions opts;
    opts.restarts = 16;
    opts.membership_tol = 0.0;
    const MembershipResult r = orbit_distance(ce.map, ce.d.to_hermitian(), ce.target, opts);
    EXPECT_NEAR(r.distance, counterexample_analytic_distance(n), 1e-3) << "n=" << n;
  }
}

TEST(OrbitDistance, DeterministicInSeed) {
  const auto map = random_map(3, 2, 4, 13);
  const auto a = random_tuple(2, 4, 14);
  const RealPoint y = RealPoint::Constant(3, 0.25);
  DescentOptions opts;
  opts.seed = 99;
  opts.restarts = 3;
  opts.max_iter = 200;
  const MembershipResult r1 = orbit_distance(map, a, y, opts);
  const MembershipResult r2 = orbit_distance(map, a, y, opts);
  EXPECT_EQ(r1.distance, r2.distance);
  EXPECT_EQ((r1.ubest.matrix() - r2.ubest.matrix()).norm(), 0.0);
}

TEST(DescendDistance, MonotoneAndStaysUnitary) {
  const auto map = random_map(3, 2, 4, 15);
  const auto a = random_tuple(2, 4, 16);
  const RealPoint y = RealPoint::Constant(3, -0.5);
  DescentOptions opts;
  opts.max_iter = 300;
  const DescentTrace t = descend_distance(map, a, y, haar_unitary(4, 17).matrix(), opts);
  EXPECT_TRUE(t.monotone);
  EXPECT_LE(t.max_unitarity_defect, 1e-10);
  EXPECT_LE(t.value, orbit_objective(map, a, haar_unitary(4, 17).matrix(), y));
}

TEST(SupportValue, SortedEigenvalueBound) {
  const LinearMapSpec map = make_c_map(HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0)), 1);
  const HermitianTuple a({HermitianMatrix::diagonal(Eigen::Vector2d(2.0, 1.0))});
  EXPECT_NEAR(support_value(map, a, RealVector::Ones(1)), 2.0, 1e-6);
  // A diagonal with its largest entry last: the identity start is a minimum.
  const HermitianTuple b({HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 2.0))});
  EXPECT_NEAR(support_value(map, b, RealVector::Ones(1)), 2.0, 1e-6);

  CounterRng rng(18);
  const HermitianMatrix c = random_hermitian(4, rng), x = random_hermitian(4, rng);
  Eigen::SelfAdjointEigenSolver<CMatrix> ec(c.matrix()), ex(x.matrix());
  EXPECT_NEAR(support_value(make_c_map(c, 1), HermitianTuple({x}), RealVector::Ones(1)),
              ec.eigenvalues().dot(ex.eigenvalues()), 1e-6);
}

TEST(SupportValue, JointNumericalRange) {
  CMatrix e11 = CMatrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  const auto a = random_tuple(2, 3, 19);
  const RealVector w = Eigen::Vector2d(0.6, -0.8);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w[0] * a[0].matrix() + w[1] * a[1].matrix());
  EXPECT_NEAR(support_value(make_c_map(HermitianMatrix(e11), 2), a, w), es.eigenvalues().maxCoeff(), 1e-8);
}

TEST(OrbitDistance, RejectsBadShapes) {
  const auto map = random_map(2, 2, 3, 20);
  EXPECT_THROW(orbit_distance(map, random_tuple(1, 3, 1), RealPoint::Zero(2)), DimensionError);
  EXPECT_THROW(orbit_distance(map, random_tuple(2, 3, 1), RealPoint::Zero(3)), DimensionError);
}

}  // namespace
