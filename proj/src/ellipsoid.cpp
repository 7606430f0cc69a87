#include "lrange/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "lrange/errors.hpp"

namespace lrange {

UnitaryMatrix t_theta_phi(double theta, double phi, int n) {
  if (n < 2) throw DimensionError("T(theta, phi) needs n >= 2");
  CMatrix t = CMatrix::Identity(n, n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e = std::polar(1.0, phi);
  t(0, 0) = c;
  t(0, 1) = s * e;
  t(1, 0) = -s;
  t(1, 1) = c * e;
  return UnitaryMatrix(std::move(t));
}

Eigen::Matrix3d EllipsoidParams::generator() const {
  Eigen::Matrix3d m;
  m.col(0) = b;
  m.col(1) = c.real();
  m.col(2) = -c.imag();
  return m;
}

Eigen::Vector3d slice_omega(double theta, double phi) {
  const double s2 = std::sin(2.0 * theta);
  return {std::cos(2.0 * theta), std::cos(phi) * s2, std::sin(phi) * s2};
}

EllipsoidParams slice_params(const DiagonalTuple& d, const UnitaryMatrix& u, const LinearMapSpec& map) {
  if (map.out_dim() > 3) throw DimensionError("orbit slices need a map into R^l with l <= 3");
  if (map.tuple_size() != d.size() || map.dim() != d.dim() || u.dim() != d.dim()) {
    throw DimensionError("slice_params: map, tuple and unitary shapes disagree");
  }
  if (d.dim() < 2) throw DimensionError("slice_params needs n >= 2");
  const int n = d.dim();
  const CMatrix& um = u.matrix();
  EllipsoidParams out;
  for (int k = 0; k < map.out_dim(); ++k) {
    double a = 0.0, b = 0.0;
    Complex c = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const RealVector& di = d[i];
      const CMatrix g = um * map.coeff(k, i).matrix() * um.adjoint();
      const double g11 = g(0, 0).real();
      const double g22 = g(1, 1).real();
      a += 0.5 * (di[0] + di[1]) * (g11 + g22);
      for (int j = 2; j < n; ++j) a += di[j] * g(j, j).real();
      b += 0.5 * (di[0] - di[1]) * (g11 - g22);
      c += (di[0] - di[1]) * g(1, 0);
    }
    out.a[k] = a;
    out.b[k] = b;
    out.c[k] = c;
  }
  return out;
}

Eigen::Vector3d slice_point(const EllipsoidParams& params, double theta, double phi) {
  const Complex e = std::polar(1.0, phi);
  Eigen::Vector3d out;
  for (int k = 0; k < 3; ++k) {
    out[k] = params.a[k] + params.b[k] * std::cos(2.0 * theta) + (params.c[k] * e).real() * std::sin(2.0 * theta);
  }
  return out;
}

Preimage least_norm_preimage(const EllipsoidParams& params, const Eigen::Vector3d& y) {
  const Eigen::Matrix3d m = params.generator();
  const Eigen::Vector3d z = y - params.a;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d& sigma = svd.singularValues();
  const double cutoff = 1e-10 * sigma[0];
  Preimage out;
  for (int j = 0; j < 3; ++j) {
    if (sigma[j] > cutoff && sigma[j] > 0.0) {
      out.omega += svd.matrixV().col(j) * (svd.matrixU().col(j).dot(z) / sigma[j]);
      ++out.rank;
    }
  }
  out.norm = out.omega.norm();
  out.residual = (m * out.omega - z).norm();
  if (out.rank < 3) out.null_direction = svd.matrixV().col(2);
  return out;
}

double surface_distance(const EllipsoidParams& params, const Eigen::Vector3d& y) {
  // In singular coordinates the problem is min sum_j (s_j x_j - zh_j)^2 over
  // ||x|| = 1. Stationary points are x_j = s_j zh_j / (s_j^2 + mu); the global
  // one has mu >= -s_min^2, and ||x(mu)|| decreases in mu on that interval.
  const Eigen::Matrix3d m = params.generator();
  const Eigen::Vector3d z = y - params.a;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d s = svd.singularValues();
  const Eigen::Vector3d zh = svd.matrixU().transpose() * z;
  const double smin2 = s[2] * s[2];
  const double scale = std::max({1.0, s[0], z.norm()});

  auto x_of = [&](double mu) {
    Eigen::Vector3d x;
    for (int j = 0; j < 3; ++j) {
      const double den = s[j] * s[j] + mu;
      x[j] = den > 0.0 ? s[j] * zh[j] / den : 0.0;
    }
    return x;
  };
  auto norm_sq = [&](double mu) { return x_of(mu).squaredNorm(); };

  Eigen::Vector3d x;
  // Components sharing the smallest singular value blow up as mu -> -s_min^2
  // unless their projection vanishes ("hard case").
  const double eps = 1e-14 * scale * scale;
  bool hard = true;
  for (int j = 0; j < 3; ++j) {
    if (s[j] * s[j] - smin2 <= eps && std::abs(s[j] * zh[j]) > 1e-14 * scale * scale) hard = false;
  }
  if (hard) {
    Eigen::Vector3d partial;
    for (int j = 0; j < 3; ++j) {
      const double den = s[j] * s[j] - smin2;
      partial[j] = den > eps ? s[j] * zh[j] / den : 0.0;
    }
    if (partial.squaredNorm() <= 1.0) {
      x = partial;
      const double fill = std::sqrt(std::max(0.0, 1.0 - partial.squaredNorm()));
      x[2] = zh[2] >= 0.0 ? fill : -fill;
      return (s.asDiagonal() * x - zh).norm();
    }
  }
  double lo = -smin2;
  double hi = std::max(0.0, -smin2) + (s.asDiagonal() * zh).norm() + 1.0;
  while (norm_sq(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (norm_sq(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  x = x_of(hi);
  const double xn = x.norm();
  if (xn > 0.0) {
    x /= xn;
  } else {
    x = Eigen::Vector3d::UnitZ();
  }
  return (s.asDiagonal() * x - zh).norm();
}

std::pair<double, double> recover_angles(const Eigen::Vector3d& omega) {
  const double transverse = std::hypot(omega[1], omega[2]);
  const double theta = 0.5 * std::atan2(transverse, omega[0]);
  const double phi = transverse <= 1e-14 ? 0.0 : std::atan2(omega[2], omega[1]);
  return {theta, phi};
}

MembershipVerdict slice_membership(const EllipsoidParams& params, const Eigen::Vector3d& y, double tol) {
  const Preimage pre = least_norm_preimage(params, y);
  MembershipVerdict out;
  out.rank = pre.rank;
  out.omega = pre.omega;

  auto on_surface = [&](Eigen::Vector3d omega) {
    out.kind = MembershipKind::OnSurface;
    out.omega = omega;
    std::tie(out.theta, out.phi) = recover_angles(omega);
  };

  if (pre.residual > tol) {
    out.kind = MembershipKind::Outside;
    out.distance = surface_distance(params, y);
    return out;
  }
  if (pre.rank <= 2 && pre.norm <= 1.0 + tol) {
    if (pre.norm < 1.0) {
      on_surface(pre.omega + std::sqrt(1.0 - pre.norm * pre.norm) * pre.null_direction);
    } else {
      on_surface(pre.omega / pre.norm);
    }
    return out;
  }
  if (pre.norm < 1.0 - tol) {
    out.kind = MembershipKind::Inside;
    return out;
  }
  if (pre.norm <= 1.0 + tol) {
    on_surface(pre.omega / pre.norm);
    return out;
  }
  out.kind = MembershipKind::Outside;
  out.distance = surface_distance(params, y);
  return out;
}

DegenerateCertificate degenerate_unitary(const DiagonalTuple& d, const LinearMapSpec& map) {
  if (d.dim() < 3) throw DimensionError("degenerate_unitary needs n >= 3");
  if (map.tuple_size() != d.size() || map.dim() != d.dim()) {
    throw DimensionError("degenerate_unitary: map and tuple shapes disagree");
  }
  const int n = d.dim();
  CMatrix p = CMatrix::Zero(n, n);
  for (int i = 0; i < d.size(); ++i) p += (d[i][0] - d[i][1]) * map.coeff(0, i).matrix();
  const HermitianMatrix pprime = resymmetrized(p);

  if (pprime.frobenius_norm() == 0.0) return {UnitaryMatrix::identity(n), 0.0, pprime};

  const HermitianEigen eig = hermitian_eig(pprime);
  const RealVector& lambda = eig.values;
  const CMatrix& x = eig.vectors.matrix();
  const double spread = lambda[2] - lambda[0];
  const double sin_sq = spread > 0.0 ? std::clamp((lambda[1] - lambda[0]) / spread, 0.0, 1.0) : 0.0;
  const double st = std::sqrt(sin_sq);
  const double ct = std::sqrt(1.0 - sin_sq);

  // Columns u, v, w, x_4, ..., x_n form a unitary basis; V is its adjoint so
  // the rows of V are u*, v*, ...
  CMatrix basis = x;
  basis.col(0) = x.col(1);
  basis.col(1) = ct * x.col(0) + st * x.col(2);
  basis.col(2) = -st * x.col(0) + ct * x.col(2);
  return {UnitaryMatrix(CMatrix(basis.adjoint())), lambda[1], pprime};
}

}  // namespace lrange
