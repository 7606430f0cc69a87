#pragma once

// Orbit slices E_L(D, U) = { L((T U)* D (T U)) : T = T(theta, phi) } of a
// diagonal tuple under maps into R^3, and the unitary that flattens them.

#include <Eigen/Dense>

#include "lrange/core.hpp"

namespace lrange {

/// [[cos th, sin th e^{i ph}], [-sin th, cos th e^{i ph}]] (+) I_{n-2}
UnitaryMatrix t_theta_phi(double theta, double phi, int n);

/// point(theta, phi) = a + b cos 2th + Re(c e^{i ph}) sin 2th = a + M omega,
/// omega = (cos 2th, cos ph sin 2th, sin ph sin 2th), M = [b | Re c | -Im c].
struct EllipsoidParams {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Vector3cd c = Eigen::Vector3cd::Zero();

  Eigen::Matrix3d generator() const;
};

Eigen::Vector3d slice_omega(double theta, double phi);

/// Slice of D at U. Maps with l < 3 are padded with zero rows; l > 3 is rejected.
EllipsoidParams slice_params(const DiagonalTuple& d, const UnitaryMatrix& u, const LinearMapSpec& map);

Eigen::Vector3d slice_point(const EllipsoidParams& params, double theta, double phi);

/// Least-norm solution of M omega = y - a, with rank cut at 1e-10 sigma_max.
struct Preimage {
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  double norm = 0.0;
  double residual = 0.0;  // ||M omega - (y - a)||
  int rank = 0;
  Eigen::Vector3d null_direction = Eigen::Vector3d::Zero();  // valid when rank < 3
};

Preimage least_norm_preimage(const EllipsoidParams& params, const Eigen::Vector3d& y);

/// min over ||omega|| = 1 of ||a + M omega - y||.
double surface_distance(const EllipsoidParams& params, const Eigen::Vector3d& y);

enum class MembershipKind { Inside, OnSurface, Outside };

struct MembershipVerdict {
  MembershipKind kind = MembershipKind::Outside;
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();  // unit when OnSurface
  double theta = 0.0;
  double phi = 0.0;
  double distance = 0.0;  // when Outside
  int rank = 0;
};

/// Classifies y against the solid ellipsoid co(E). Planar slices (rank <= 2)
/// coincide with their convex hull, so feasible points with ||omega|| <= 1
/// are reported OnSurface with a null-space padded unit preimage.
MembershipVerdict slice_membership(const EllipsoidParams& params, const Eigen::Vector3d& y, double tol);

/// (theta, phi) with slice_omega(theta, phi) == omega for unit omega.
std::pair<double, double> recover_angles(const Eigen::Vector3d& omega);

struct DegenerateCertificate {
  UnitaryMatrix v;
  double alpha = 0.0;
  HermitianMatrix pprime;  // sum_i (d_1^(i) - d_2^(i)) C[0][i]
};

/// V whose leading 2x2 block of V P' V* is alpha I_2, built from three
/// eigenpairs of P': u = x_2, v = cos t x_1 + sin t x_3 with
/// sin^2 t = (l_2 - l_1) / (l_3 - l_1). Requires n >= 3.
DegenerateCertificate degenerate_unitary(const DiagonalTuple& d, const LinearMapSpec& map);

}  // namespace lrange
