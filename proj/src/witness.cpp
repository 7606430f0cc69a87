#include "lrange/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "lrange/ellipsoid.hpp"
#include "lrange/errors.hpp"
#include "lrange/linalg.hpp"

namespace lrange {

UnitaryMatrix unitary_path(const UnitaryMatrix& u, const UnitaryMatrix& v, double t) {
  return UnitaryPath(u, v).at(t);
}

namespace {

// Crossing detection on the grid, and the accuracy bisection aims for.
constexpr double kCrossingTol = 1e-10;
constexpr double kBisectionTarget = 1e-13;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void check_witness_regime(const DiagonalTuple& d, const LinearMapSpec& map) {
  if (map.out_dim() > 3) {
    throw DimensionError("witnesses exist only for maps into R^l with l <= 3; for l >= 4 the inclusion can fail "
                         "(see the `counterexample` command)");
  }
  if (map.tuple_size() != d.size() || map.dim() != d.dim()) {
    throw DimensionError("witness: map and tuple shapes disagree");
  }
  if (d.dim() < 2) throw DimensionError("witness needs n >= 2");
  if (map.out_dim() == 3 && d.dim() < 3) throw DimensionError("witness for l = 3 needs n >= 3");
}

Eigen::Vector3d pad3(const RealPoint& y) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (Eigen::Index k = 0; k < y.size(); ++k) out[k] = y[k];
  return out;
}

double rho_of(const Preimage& pre, double feasibility_tol) {
  return pre.residual > feasibility_tol ? std::numeric_limits<double>::infinity() : pre.norm;
}

// Planar slices equal their convex hull: any feasible preimage of norm <= 1
// pads to a unit one.
bool planar_hit(const Preimage& pre, double feasibility_tol) {
  return pre.rank <= 2 && pre.residual <= feasibility_tol && pre.norm <= 1.0 + kCrossingTol;
}

Eigen::Vector3d unit_preimage(const Preimage& pre) {
  if (pre.rank <= 2 && pre.norm < 1.0) {
    return pre.omega + std::sqrt(1.0 - pre.norm * pre.norm) * pre.null_direction;
  }
  if (pre.norm == 0.0) return Eigen::Vector3d::UnitX();
  return pre.omega / pre.norm;
}

}  // namespace

Witness single_pinch_witness(const DiagonalTuple& d, const LinearMapSpec& map, const Pinching& p,
                             const UnitaryMatrix& u, double tol) {
  check_witness_regime(d, map);
  const int n = d.dim();
  p.validate(n);
  if (u.dim() != n) throw DimensionError("witness: unitary dimension differs from tuple");

  DiagonalTuple dhat = apply_chain(PinchChain(n, {p}), d);
  const RealPoint target = eval_map(map, conjugate_tuple(dhat.to_hermitian(), u));
  const Eigen::Vector3d y = pad3(target);
  const LinearMapSpec map3 = map.lifted(3);

  // Move (s, t) to (1, 2): D = Q D' Q* with Q e_j = e_order[j].
  std::vector<int> order{p.s, p.t};
  for (int j = 0; j < n; ++j) {
    if (j != p.s && j != p.t) order.push_back(j);
  }
  CMatrix q = CMatrix::Zero(n, n);
  std::vector<RealVector> reduced(static_cast<std::size_t>(d.size()), RealVector(n));
  for (int j = 0; j < n; ++j) {
    q(order[static_cast<std::size_t>(j)], j) = 1.0;
    for (int i = 0; i < d.size(); ++i) reduced[static_cast<std::size_t>(i)][j] = d[i][order[static_cast<std::size_t>(j)]];
  }
  const DiagonalTuple dred(std::move(reduced));
  const UnitaryMatrix qm(q);
  const UnitaryMatrix ured(CMatrix(q.adjoint() * u.matrix()));

  double scale = 1.0 + y.norm();
  for (const auto& v : d.vectors()) scale += map.frobenius_norm() * v.norm();
  const double feasibility_tol = 1e-9 * scale;

  auto preimage_at = [&](const CMatrix& f) { return least_norm_preimage(slice_params(dred, UnitaryMatrix(f), map3), y); };

  const Preimage start = preimage_at(ured.matrix());
  const double rho0 = rho_of(start, feasibility_tol);
  if (!(rho0 <= 1.0 + 1e-9)) {
    throw WitnessError("pinched point is not inside the slice ellipsoid at t = 0 (rho = " + fmt(rho0) +
                       "); the convex-combination invariant is broken");
  }

  CMatrix path_point = ured.matrix();
  Preimage hit = start;
  double t_hit = 0.0;

  if (!(planar_hit(start, feasibility_tol) || rho0 >= 1.0 - kCrossingTol)) {
    const DegenerateCertificate cert = degenerate_unitary(dred, map3);
    const UnitaryPath path(ured, cert.v);
    bool found = false;
    double t_prev = 0.0;
    for (int j = 1; j < kPathGridPoints && !found; ++j) {
      const double t = static_cast<double>(j) / (kPathGridPoints - 1);
      const CMatrix f = path.at_raw(t);
      const Preimage pre = preimage_at(f);
      const double rho = rho_of(pre, feasibility_tol);
      if (planar_hit(pre, feasibility_tol)) {
        found = true;
        hit = pre;
        t_hit = t;
        path_point = f;
      } else if (rho >= 1.0 - kCrossingTol) {
        found = true;
        // Bisect [t_prev, t] on rho(t) - 1; keep the closest finite endpoint.
        double lo = t_prev, hi = t;
        struct Best {
          double gap;
          double t;
          Preimage pre;
          CMatrix f;
        };
        std::optional<Best> best;
        if (std::isfinite(rho)) best = Best{std::abs(rho - 1.0), t, pre, f};
        for (int it = 0; it < kBisectionSteps; ++it) {
          if (best && best->gap <= kBisectionTarget) break;
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const CMatrix fm = path.at_raw(mid);
          const Preimage pm = preimage_at(fm);
          const double rm = rho_of(pm, feasibility_tol);
          if (planar_hit(pm, feasibility_tol)) {
            best = Best{0.0, mid, pm, fm};
            break;
          }
          if (std::isfinite(rm) && (!best || std::abs(rm - 1.0) < best->gap)) best = Best{std::abs(rm - 1.0), mid, pm, fm};
          if (rm >= 1.0) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        if (!best) throw WitnessError("bisection found no finite preimage near the crossing");
        hit = best->pre;
        t_hit = best->t;
        path_point = best->f;
      }
      t_prev = t;
    }
    if (!found) {
      throw WitnessError("no surface crossing on the " + std::to_string(kPathGridPoints) +
                         "-point path grid; the flattened endpoint should always bracket one");
    }
  }

  const auto [theta, phi] = recover_angles(unit_preimage(hit));
  const CMatrix reduced_witness = t_theta_phi(theta, phi, n).matrix() * path_point;
  const UnitaryMatrix uprime(CMatrix(qm.matrix() * reduced_witness));
  const double residual = (eval_map(map, conjugate_tuple(d.to_hermitian(), uprime)) - target).norm();
  if (!(residual <= tol)) {
    throw WitnessError("witness residual " + fmt(residual) + " exceeds tolerance " + fmt(tol) + " (t = " +
                       fmt(t_hit) + ")");
  }
  return {uprime, theta, phi, t_hit, residual};
}

Witness chain_witness(const DiagonalTuple& d, const LinearMapSpec& map, const PinchChain& chain,
                      const UnitaryMatrix& u, double tol) {
  check_witness_regime(d, map);
  if (chain.dim() != d.dim()) throw DimensionError("chain_witness: chain and tuple dimensions differ");
  if (chain.empty()) return {u, 0.0, 0.0, 0.0, 0.0};

  const HermitianTuple dh = d.to_hermitian();
  const RealPoint target = eval_map(map, conjugate_tuple(apply_chain(chain, d).to_hermitian(), u));

  // partial[j] = P_{j+1} ... P_k d, so partial[k] = d and partial[0] = D_hat.
  const std::size_t k = chain.size();
  std::vector<DiagonalTuple> partial(k + 1);
  partial[k] = d;
  for (std::size_t j = k; j-- > 0;) partial[j] = apply_chain(PinchChain(d.dim(), {chain[j]}), partial[j + 1]);

  Witness step{u, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 1; j <= k; ++j) {
    step = single_pinch_witness(partial[j], map, chain[j - 1], step.uprime, tol);
  }
  step.residual = (eval_map(map, conjugate_tuple(dh, step.uprime)) - target).norm();
  if (!(step.residual <= static_cast<double>(k) * tol)) {
    throw WitnessError("chain witness residual " + fmt(step.residual) + " exceeds k * tol");
  }
  return step;
}

double star_synthesis_tol(const DiagonalTuple& d, const LinearMapSpec& map, double tol) {
  double dnorm_sq = 0.0;
  const DiagonalTuple centered = d.traceless();
  for (const auto& v : centered.vectors()) dnorm_sq += v.squaredNorm();
  const double denom = map.frobenius_norm() * std::sqrt(dnorm_sq);
  if (!(denom > 0.0)) return kDefaultSynthesisTol;
  return std::min(kDefaultSynthesisTol, 0.5 * tol / denom);
}

StarWitness star_point_witness(const DiagonalTuple& d, const LinearMapSpec& map, const UnitaryMatrix& u,
                               double alpha, double tol) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DimensionError("star point alpha must lie in [0, 1]");
  const SynthesisResult synthesis = synth_scaling({d.dim(), alpha}, star_synthesis_tol(d, map, tol));
  return star_point_witness(d, map, u, alpha, tol, synthesis);
}

StarWitness star_point_witness(const DiagonalTuple& d, const LinearMapSpec& map, const UnitaryMatrix& u,
                               double alpha, double tol, const SynthesisResult& synthesis) {
  check_witness_regime(d, map);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DimensionError("star point alpha must lie in [0, 1]");
  if (synthesis.chain.dim() != d.dim()) throw DimensionError("synthesized chain has the wrong dimension");
  if (u.dim() != d.dim()) throw DimensionError("star witness: unitary dimension differs from tuple");

  const HermitianTuple dh = d.to_hermitian();
  const RealPoint center = star_center(map, dh);
  const RealPoint y = eval_map(map, conjugate_tuple(dh, u));

  StarWitness out;
  out.target = alpha * y + (1.0 - alpha) * center;

  // Shifting by scalar matrices moves every orbit point by the same vector, so
  // the traceless tuple carries all the geometry: S(alpha) d = alpha d there.
  const DiagonalTuple centered = d.traceless();
  double centered_norm_sq = 0.0;
  for (const auto& v : centered.vectors()) centered_norm_sq += v.squaredNorm();

  if (alpha == 1.0 || centered_norm_sq == 0.0) {
    out.witness = {u, 0.0, 0.0, 0.0, 0.0};
  } else {
    out.synthesis_error = synthesis.achieved_error;
    out.synthesis_bound = map.frobenius_norm() * synthesis.achieved_error * std::sqrt(centered_norm_sq);
    out.chain_length = synthesis.chain.size();
    const double step_tol = 0.5 * tol / static_cast<double>(std::max<std::size_t>(1, synthesis.chain.size()));
    out.witness = chain_witness(centered, map, synthesis.chain, u, step_tol);
    out.chain_residual = out.witness.residual;
  }
  out.witness.residual = (eval_map(map, conjugate_tuple(dh, out.witness.uprime)) - out.target).norm();
  return out;
}

}  // namespace lrange
