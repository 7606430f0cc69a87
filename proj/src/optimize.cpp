#include "lrange/optimize.hpp"

#include <cmath>
#include <limits>

#include "lrange/errors.hpp"
#include "lrange/linalg.hpp"
#include "lrange/rng.hpp"

namespace lrange {

namespace {

constexpr int kMaxHalvings = 30;
constexpr int kReorthonormalizeEvery = 50;
constexpr double kMaxStep = 1e6;

void check_shapes(const LinearMapSpec& map, const HermitianTuple& a) {
  if (map.tuple_size() != a.size() || map.dim() != a.dim()) {
    throw DimensionError("map expects m=" + std::to_string(map.tuple_size()) + ", n=" + std::to_string(map.dim()) +
                         " but tuple has m=" + std::to_string(a.size()) + ", n=" + std::to_string(a.dim()));
  }
}

std::vector<CMatrix> conjugated(const HermitianTuple& a, const CMatrix& u) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (const auto& item : a.items()) {
    const CMatrix x = u.adjoint() * item.matrix() * u;
    out.push_back(0.5 * (x + x.adjoint()));
  }
  return out;
}

RealPoint eval_raw(const LinearMapSpec& map, const HermitianTuple& a, const CMatrix& u) {
  std::vector<HermitianMatrix> items;
  for (auto& x : conjugated(a, u)) items.push_back(resymmetrized(x));
  return eval_map(map, HermitianTuple(std::move(items)));
}

// sum_i [X_i, B_i]
CMatrix commutator_sum(const std::vector<CMatrix>& x, const std::vector<HermitianMatrix>& b) {
  const auto n = x.front().rows();
  CMatrix g = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    g += x[i] * b[i].matrix() - b[i].matrix() * x[i];
  }
  return 0.5 * (g - g.adjoint());
}

// Riemannian descent with backtracking; `objective(U)` returns the value and
// `direction(U)` its skew-Hermitian gradient. Stops at once if the value
// reaches `floor` (a known lower bound).
template <class Objective, class Gradient>
DescentTrace descend(const CMatrix& start, Objective objective, Gradient direction, const DescentOptions& opts,
                     double floor) {
  DescentTrace out;
  out.u = start;
  out.value = objective(out.u);
  double eta = opts.step;
  const auto n = start.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  while (out.iterations < opts.max_iter) {
    if (out.value <= floor) break;
    const CMatrix g = direction(out.u);
    if (g.norm() <= opts.tol) break;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      CMatrix next = out.u * expm_skew(-eta * g);
      const double value = objective(next);
      if (value < out.value) {
        out.u = std::move(next);
        out.value = value;
        eta = std::min(2.0 * eta, kMaxStep);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    ++out.iterations;
    if (out.iterations % kReorthonormalizeEvery == 0) {
      out.u = nearest_unitary(out.u);
      const double value = objective(out.u);
      // Rounding-level changes only; the best value stays monotone.
      if (value > out.value * (1.0 + 1e-12) + 1e-300) out.monotone = false;
      out.value = value;
    }
    out.max_unitarity_defect = std::max(out.max_unitarity_defect, (out.u.adjoint() * out.u - id).norm());
  }
  return out;
}

CMatrix restart_start(int restart, int n, const DescentOptions& opts) {
  if (restart == 0) return opts.initial ? opts.initial->matrix() : CMatrix(CMatrix::Identity(n, n));
  return haar_unitary(n, derive_seed(opts.seed, static_cast<std::uint64_t>(restart))).matrix();
}

}  // namespace

double orbit_objective(const LinearMapSpec& map, const HermitianTuple& a, const CMatrix& u, const RealPoint& y) {
  return (eval_raw(map, a, u) - y).squaredNorm();
}

CMatrix gradient(const LinearMapSpec& map, const HermitianTuple& a, const UnitaryMatrix& u, const RealPoint& y) {
  check_shapes(map, a);
  if (y.size() != map.out_dim()) throw DimensionError("gradient: target has wrong dimension");
  const std::vector<CMatrix> x = conjugated(a, u.matrix());
  std::vector<HermitianMatrix> xh;
  for (const auto& xi : x) xh.push_back(resymmetrized(xi));
  const RealVector residual = 2.0 * (eval_map(map, HermitianTuple(std::move(xh))) - y);
  return commutator_sum(x, map.weighted_rows(residual));
}

DescentTrace descend_distance(const LinearMapSpec& map, const HermitianTuple& a, const RealPoint& y,
                              const CMatrix& start, const DescentOptions& opts) {
  check_shapes(map, a);
  auto objective = [&](const CMatrix& u) { return orbit_objective(map, a, u, y); };
  auto direction = [&](const CMatrix& u) {
    const std::vector<CMatrix> x = conjugated(a, u);
    const RealVector residual = 2.0 * (eval_raw(map, a, u) - y);
    return commutator_sum(x, map.weighted_rows(residual));
  };
  return descend(start, objective, direction, opts, 0.0);
}

MembershipResult orbit_distance(const LinearMapSpec& map, const HermitianTuple& a, const RealPoint& y,
                                const DescentOptions& opts) {
  check_shapes(map, a);
  if (y.size() != map.out_dim()) throw DimensionError("orbit_distance: target has wrong dimension");
  if (opts.restarts < 1) throw DimensionError("orbit_distance needs at least one restart");
  const int n = a.dim();
  MembershipResult best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    const DescentTrace trace = descend_distance(map, a, y, restart_start(r, n, opts), opts);
    UnitaryMatrix u(nearest_unitary(trace.u));
    const double distance = std::sqrt(orbit_objective(map, a, u.matrix(), y));
    best.restarts_used = r + 1;
    if (distance < best.distance) {
      best.distance = distance;
      best.ubest = std::move(u);
      best.iterations = trace.iterations;
    }
    if (best.distance <= opts.membership_tol) break;
  }
  best.member = best.distance <= opts.membership_tol;
  return best;
}

double support_value(const LinearMapSpec& map, const HermitianTuple& a, const RealVector& w,
                     const DescentOptions& opts) {
  check_shapes(map, a);
  if (w.size() != map.out_dim()) throw DimensionError("support_value: direction has wrong dimension");
  if (opts.restarts < 1) throw DimensionError("support_value needs at least one restart");
  const std::vector<HermitianMatrix> b = map.weighted_rows(w);
  // Minimize -h(U), h(U) = sum_i Re tr(B_i U* A_i U).
  auto objective = [&](const CMatrix& u) {
    double h = 0.0;
    const std::vector<CMatrix> x = conjugated(a, u);
    for (std::size_t i = 0; i < x.size(); ++i) h += (b[i].matrix() * x[i]).trace().real();
    return -h;
  };
  auto direction = [&](const CMatrix& u) {
    // grad h = sum_i [X_i, B_i]
    return CMatrix(-commutator_sum(conjugated(a, u), b));
  };
  const int n = a.dim();
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    const CMatrix start = restart_start(r, n, opts);
    const DescentTrace trace =
        descend(start, objective, direction, opts, -std::numeric_limits<double>::infinity());
    best = std::max(best, -objective(nearest_unitary(trace.u)));
  }
  return best;
}

}  // namespace lrange
