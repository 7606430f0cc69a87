#include "lrange/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrange/errors.hpp"
#include "lrange/witness.hpp"

namespace lrange {

void CertReport::record(std::size_t index, std::uint64_t sample, double alpha, double residual, double tol,
                        std::string detail) {
  ++checked;
  if (std::isfinite(residual)) max_residual = std::max(max_residual, residual);
  if (!(residual <= tol)) {
    if (!std::isfinite(residual)) max_residual = residual;
    failures.push_back({index, sample, alpha, residual, std::move(detail)});
  }
}

PointCloud sample_orbit_cloud(const LinearMapSpec& map, const HermitianTuple& a, std::size_t count,
                              std::uint64_t seed) {
  if (count < 1) throw DimensionError("sample count must be >= 1");
  if (map.tuple_size() != a.size() || map.dim() != a.dim()) {
    throw DimensionError("sample: map and tuple shapes disagree");
  }
  PointCloud cloud;
  cloud.l = map.out_dim();
  cloud.seed = seed;
  cloud.count = count;
  cloud.points.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    cloud.points.push_back(eval_map(map, conjugate_tuple(a, haar_unitary(a.dim(), sample_seed(seed, j)))));
  }
  return cloud;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> out;
  for (int k = 1; k <= 9; ++k) out.push_back(k / 10.0);
  return out;
}

CertReport check_star_shaped(const LinearMapSpec& map, const DiagonalTuple& d, std::size_t samples,
                             const std::vector<double>& alphas, double tol, std::uint64_t seed) {
  CertReport report;
  report.kind = "star";
  std::vector<SynthesisResult> synth;
  synth.reserve(alphas.size());
  const double synth_tol = star_synthesis_tol(d, map, tol);
  for (double alpha : alphas) synth.push_back(synth_scaling({d.dim(), alpha}, synth_tol));

  for (std::size_t j = 0; j < samples; ++j) {
    const std::uint64_t s = sample_seed(seed, j);
    const UnitaryMatrix u = haar_unitary(d.dim(), s);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      try {
        const StarWitness w = star_point_witness(d, map, u, alphas[a], tol, synth[a]);
        report.max_synthesis_error = std::max(report.max_synthesis_error, w.synthesis_error);
        report.record(j, s, alphas[a], w.witness.residual, tol, "star point witness residual");
      } catch (const WitnessError& e) {
        report.record(j, s, alphas[a], std::numeric_limits<double>::infinity(), tol, e.what());
      }
    }
  }
  return report;
}

CertReport check_convex(const LinearMapSpec& map, const HermitianTuple& a, std::size_t pairs, double tol,
                        std::uint64_t seed, const DescentOptions& opts) {
  CertReport report;
  report.kind = "convex";
  for (std::size_t j = 0; j < pairs; ++j) {
    const std::uint64_t s0 = sample_seed(seed, 2 * j);
    const std::uint64_t s1 = sample_seed(seed, 2 * j + 1);
    const UnitaryMatrix u0 = haar_unitary(a.dim(), s0);
    const RealPoint p0 = eval_map(map, conjugate_tuple(a, u0));
    const RealPoint p1 = eval_map(map, conjugate_tuple(a, haar_unitary(a.dim(), s1)));
    DescentOptions local = opts;
    local.seed = derive_seed(opts.seed, j);
    if (!local.initial) local.initial = u0;
    const MembershipResult r = orbit_distance(map, a, 0.5 * (p0 + p1), local);
    report.record(j, s0, 0.5, r.distance, tol, "midpoint distance");
  }
  return report;
}

HermitianTuple scale_offdiag(const HermitianTuple& a, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DimensionError("eps must lie in [0, 1]");
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (const auto& item : a.items()) {
    CMatrix m = eps * item.matrix();
    m.diagonal() = item.matrix().diagonal();
    out.push_back(resymmetrized(m));
  }
  return HermitianTuple(std::move(out));
}

CertReport check_ct_inclusion(const LinearMapSpec& map, const HermitianTuple& a, double eps, std::size_t samples,
                              double tol, std::uint64_t seed, const DescentOptions& opts) {
  if (map.out_dim() != 2) throw DimensionError("inclusion check needs l = 2");
  CertReport report;
  report.kind = "inclusion";
  const HermitianTuple scaled = scale_offdiag(a, eps);
  for (std::size_t j = 0; j < samples; ++j) {
    const std::uint64_t s = sample_seed(seed, j);
    const UnitaryMatrix u = haar_unitary(a.dim(), s);
    DescentOptions local = opts;
    local.seed = derive_seed(opts.seed, j);
    local.initial = u;
    const MembershipResult r = orbit_distance(map, a, eval_map(map, conjugate_tuple(scaled, u)), local);
    report.record(j, s, eps, r.distance, tol, "distance to W_L(A)");
  }
  return report;
}

Counterexample counterexample_instance(int n, int m, int l) {
  if (n < 2) throw DimensionError("counterexample needs n >= 2");
  if (m < 1) throw DimensionError("counterexample needs m >= 1");
  if (l < 4) throw DimensionError("counterexample needs l >= 4");
  const Complex i(0.0, 1.0);
  auto padded = [n](Complex a, Complex b, Complex c, Complex e) {
    CMatrix x = CMatrix::Zero(n, n);
    x(0, 0) = a;
    x(0, 1) = b;
    x(1, 0) = c;
    x(1, 1) = e;
    return HermitianMatrix(x);
  };
  const HermitianMatrix blocks[4] = {
      padded(1.0, 0.0, 0.0, 1.0),  // P
      padded(0.0, i, -i, 0.0),     // Q
      padded(1.0, 0.0, 0.0, -1.0), // R
      padded(0.0, 1.0, 1.0, 0.0),  // S
  };
  std::vector<std::vector<HermitianMatrix>> coeffs(static_cast<std::size_t>(l),
                                                   std::vector<HermitianMatrix>(static_cast<std::size_t>(m),
                                                                                HermitianMatrix::zero(n)));
  for (int k = 0; k < 4; ++k) coeffs[static_cast<std::size_t>(k)][0] = blocks[k];

  std::vector<RealVector> dv(static_cast<std::size_t>(m), RealVector::Zero(n));
  dv[0][0] = 1.0;
  Counterexample out{DiagonalTuple(dv), DiagonalTuple(), LinearMapSpec(n, std::move(coeffs)),
                     PinchChain(n, {Pinching{0, 1, 0.5}}), RealPoint::Zero(l)};
  out.dhat = apply_chain(out.chain, out.d);
  out.target[0] = 1.0;
  return out;
}

double counterexample_analytic_distance(int n) {
  if (n < 2) throw DimensionError("counterexample needs n >= 2");
  return n == 2 ? 1.0 : std::sqrt(0.5);
}

CounterexampleReport run_counterexample(int n, int m, int l, int restarts, std::uint64_t seed) {
  const Counterexample ce = counterexample_instance(n, m, l);
  CounterexampleReport out;
  out.restarts = restarts;
  out.analytic_distance = counterexample_analytic_distance(n);

  DescentOptions hat_opts;
  hat_opts.seed = seed;
  hat_opts.membership_tol = 1e-10;
  out.hat_distance = orbit_distance(ce.map, ce.dhat.to_hermitian(), ce.target, hat_opts).distance;

  DescentOptions opts;
  opts.seed = seed;
  opts.restarts = restarts;
  opts.membership_tol = 0.0;
  out.distance = orbit_distance(ce.map, ce.d.to_hermitian(), ce.target, opts).distance;

  out.pass = out.hat_distance <= 1e-10 && std::abs(out.distance - out.analytic_distance) <= 1e-3;
  return out;
}

}  // namespace lrange
